#ifndef FFOD_PROFILE_HPP
#define FFOD_PROFILE_HPP

#include <cstdint>

#include "ffod/arith.hpp"
#include "ffod/polyring.hpp"

namespace ffod {

/// Invariants of (q, a, d) consumed by the density formulas:
///   a = lambda * a~, a~ the largest-power content h, m = ord(lambda) in F_q^x,
///   f = ord_d(q), f_bar = ord_{d(h,d^infty)}(q), p_flag the proposition [P].
struct ArithProfile {
    FieldSpec::Ptr field;
    RatFunc a;
    std::uint64_t d = 0;
    SupernaturalBase base;  // d^infty

    std::uint32_t lambda = 1;
    RatFunc a_monic;
    std::uint64_t h = 1;
    std::uint64_t m = 1;
    std::uint64_t f = 1;
    std::uint64_t f_bar = 1;
    bool p_flag = false;

    std::uint64_t q() const { return field->q(); }
};

ArithProfile profile_new(FieldSpec::Ptr field, RatFunc a, std::uint64_t d);

/// K(a^{1/n})/K constant field extension <=> n | h.
bool is_constant_extension(const ArithProfile& pr, std::uint64_t n);

/// e_N = ((q^N - 1)/d, d^infty); requires f | N.  Valuation-based, valid for
/// N far beyond any materializable q^N.
std::uint64_t e_N(const ArithProfile& pr, std::uint64_t N);

/// [F_{n,dd} : F_q] with dd | n, (n,p) = 1.
std::uint64_t constant_field_degree(const ArithProfile& pr, std::uint64_t n,
                                    std::uint64_t dd);

/// f_{u,v} = [F_{dv,uv} : F_q] for u | d, v | d^infty.
std::uint64_t f_uv(const ArithProfile& pr, std::uint64_t u, std::uint64_t v);

/// [K_{dv,uv} : F_{dv,uv}K] = uv/(uv, h).
std::uint64_t geometric_degree(const ArithProfile& pr, std::uint64_t u,
                               std::uint64_t v);

/// ord_{dv}(q) through the order formula (no big powers materialized).
std::uint64_t ord_dv(const ArithProfile& pr, std::uint64_t v);

}  // namespace ffod

#endif
