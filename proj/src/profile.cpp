#include "ffod/profile.hpp"

#include <numeric>

namespace ffod {

ArithProfile profile_new(FieldSpec::Ptr field, RatFunc a, std::uint64_t d) {
    if (d < 2) throw DLessThanTwo("profile: d < 2");
    if (a.is_zero()) throw ZeroInput("profile: a = 0");
    if (a.is_constant()) throw ConstantA("profile: a is constant");
    if (d % field->p() == 0) throw CharacteristicDividesD("profile: p | d");

    ArithProfile pr{std::move(field), std::move(a), d, SupernaturalBase(d)};
    auto [lambda, amon] = monic_part(pr.a);
    pr.lambda = lambda;
    pr.a_monic = amon;

    // h = gcd of all irreducible-factor exponents of a~ (denominator factors
    // enter with negated exponents; the gcd sees absolute values)
    std::uint64_t h = 0;
    if (pr.a_monic.num.degree() > 0)
        for (const auto& [P, e] : factorize(pr.a_monic.num).factors)
            h = std::gcd(h, static_cast<std::uint64_t>(e));
    if (pr.a_monic.den.degree() > 0)
        for (const auto& [P, e] : factorize(pr.a_monic.den).factors)
            h = std::gcd(h, static_cast<std::uint64_t>(e));
    pr.h = h == 0 ? 1 : h;

    pr.m = pr.field->unit_order(pr.lambda);
    pr.f = mult_order(pr.q(), d);
    pr.f_bar = mult_order(pr.q(), d * gcd_supernatural(pr.h, pr.base));
    pr.p_flag = proposition_P(pr.q(), d, pr.f);
    return pr;
}

bool is_constant_extension(const ArithProfile& pr, std::uint64_t n) {
    if (n < 1) throw PreconditionViolated("is_constant_extension: n < 1");
    if (n % pr.field->p() == 0) throw PDividesN("is_constant_extension: p | n");
    return pr.h % n == 0;
}

std::uint64_t e_N(const ArithProfile& pr, std::uint64_t N) {
    if (N % pr.f != 0) throw FDoesNotDivideN("e_N: f does not divide N");
    std::uint64_t e = 1;
    for (std::uint64_t l : pr.base.primes) {
        unsigned v = val_qpow_minus1(pr.q(), N, l) - val(pr.d, l);
        e *= pow_u64(l, v);
    }
    return e;
}

std::uint64_t ord_dv(const ArithProfile& pr, std::uint64_t v) {
    return ord_via_formula(pr.q(), pr.d, pr.f, v);
}

namespace {

// gcd((q^r - 1)/m, D) by per-prime valuations; m | q - 1 so the quotient's
// valuation is v_l(q^r - 1) - v_l(m)
std::uint64_t gcd_index_part(std::uint64_t q, std::uint64_t r, std::uint64_t m,
                             std::uint64_t D) {
    std::uint64_t g = 1;
    for (const auto& [l, e] : factor_u64(D)) {
        unsigned vq = val_qpow_minus1(q, r, l) - val(m, l);
        g *= pow_u64(l, std::min(vq, e));
    }
    return g;
}

}  // namespace

std::uint64_t constant_field_degree(const ArithProfile& pr, std::uint64_t n,
                                    std::uint64_t dd) {
    if (dd == 0 || n % dd != 0)
        throw PreconditionViolated("constant_field_degree: dd does not divide n");
    if (n % pr.field->p() == 0)
        throw PreconditionViolated("constant_field_degree: p | n");
    std::uint64_t r = mult_order(pr.q(), n);
    std::uint64_t D = std::gcd(dd, pr.h);
    return r * D / gcd_index_part(pr.q(), r, pr.m, D);
}

std::uint64_t f_uv(const ArithProfile& pr, std::uint64_t u, std::uint64_t v) {
    if (u == 0 || pr.d % u != 0)
        throw PreconditionViolated("f_uv: u does not divide d");
    if (gcd_supernatural(v, pr.base) != v)
        throw PreconditionViolated("f_uv: v does not divide d^infty");
    std::uint64_t r = ord_dv(pr, v);
    std::uint64_t D = std::gcd(u * v, pr.h);
    std::uint64_t deg = r * D / gcd_index_part(pr.q(), r, pr.m, D);
    // Remark: f_{u,v} = f * k with k | d^infty
    if (deg % pr.f != 0 || gcd_supernatural(deg / pr.f, pr.base) != deg / pr.f)
        throw Error("f_uv: internal consistency check failed");
    return deg;
}

std::uint64_t geometric_degree(const ArithProfile& pr, std::uint64_t u,
                               std::uint64_t v) {
    if (u == 0 || pr.d % u != 0)
        throw PreconditionViolated("geometric_degree: u does not divide d");
    if (gcd_supernatural(v, pr.base) != v)
        throw PreconditionViolated("geometric_degree: v does not divide d^infty");
    std::uint64_t uv = u * v;
    return uv / std::gcd(uv, pr.h);
}

}  // namespace ffod
