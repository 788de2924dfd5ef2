#ifndef FFOD_ERRORS_HPP
#define FFOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define FFOD_DEFINE_ERROR(Name)                  \
    struct Name : Error {                        \
        using Error::Error;                      \
    }

FFOD_DEFINE_ERROR(NotCoprime);
FFOD_DEFINE_ERROR(PreconditionViolated);
FFOD_DEFINE_ERROR(TooLarge);
FFOD_DEFINE_ERROR(NotPrime);
FFOD_DEFINE_ERROR(ReducibleModulus);
FFOD_DEFINE_ERROR(DivisionByZero);
FFOD_DEFINE_ERROR(FieldMismatch);
FFOD_DEFINE_ERROR(ZeroElement);
FFOD_DEFINE_ERROR(ZeroInput);
FFOD_DEFINE_ERROR(ConstantInput);
FFOD_DEFINE_ERROR(BudgetExceeded);
FFOD_DEFINE_ERROR(ConstantA);
FFOD_DEFINE_ERROR(CharacteristicDividesD);
FFOD_DEFINE_ERROR(DLessThanTwo);
FFOD_DEFINE_ERROR(PDividesN);
FFOD_DEFINE_ERROR(FDoesNotDivideN);
FFOD_DEFINE_ERROR(BadReduction);
FFOD_DEFINE_ERROR(AssumptionNotVerified);
FFOD_DEFINE_ERROR(FTooSmall);
FFOD_DEFINE_ERROR(ParseError);

#undef FFOD_DEFINE_ERROR

}  // namespace ffod

#endif
