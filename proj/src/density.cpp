#include "ffod/density.hpp"

#include <numeric>

namespace ffod {

namespace {

mpq_class frac(std::uint64_t n, std::uint64_t d) {
    mpq_class r(mpz_class(static_cast<unsigned long>(n)),
                mpz_class(static_cast<unsigned long>(d)));
    r.canonicalize();
    return r;
}

}  // namespace

DensityValue proportion_density(const ArithProfile& pr, std::uint64_t N) {
    DensityValue out{0, 0, DensityKind::proportion};
    if (N % pr.f != 0) return out;
    std::uint64_t e = e_N(pr, N);
    for (std::uint64_t v : divisors_of(e)) {
        for (std::uint64_t u : divisors_of(pr.d)) {
            int mu = moebius(u);
            if (mu == 0) continue;
            if (N % f_uv(pr, u, v) != 0) continue;
            std::uint64_t geo = geometric_degree(pr, u, v);
            out.value += mu * frac(1, geo);
        }
    }
    return out;
}

std::uint64_t partition_w(const ArithProfile& pr, std::uint64_t N) {
    if (N % pr.f != 0) throw FDoesNotDivideN("partition_w: f does not divide N");
    return gcd_supernatural(N / pr.f, pr.base);
}

DensityValue delta_w(const ArithProfile& pr, std::uint64_t w) {
    if (gcd_supernatural(w, pr.base) != w)
        throw PreconditionViolated("delta_w: w does not divide d^infty");
    DensityValue out{0, 0, DensityKind::delta_w};
    std::uint64_t fw = pr.f * w;
    std::uint64_t e = e_N(pr, fw);
    for (std::uint64_t v : divisors_of(e)) {
        for (std::uint64_t u : divisors_of(pr.d)) {
            int mu = moebius(u);
            if (mu == 0) continue;
            if (fw % f_uv(pr, u, v) != 0) continue;
            std::uint64_t uv = u * v;
            out.value += mu * frac(std::gcd(uv, pr.h), uv);
        }
    }
    return out;
}

std::uint64_t eta(const ArithProfile& pr, std::uint64_t m, std::uint64_t n) {
    if (!(pr.p_flag && std::gcd(m, n) % 2 == 0)) return 1;
    // v_2(q^fbar + 1) = v_2(q^{2 fbar} - 1) - v_2(q^fbar - 1)
    unsigned v2 = val_qpow_minus1(pr.q(), 2 * pr.f_bar, 2) -
                  val_qpow_minus1(pr.q(), pr.f_bar, 2);
    return pow_u64(2, v2 - 1);
}

AssumptionReport assumption_check(const ArithProfile& pr, std::uint64_t v_bound) {
    AssumptionReport rep;
    rep.v_bound = v_bound;
    if (std::gcd(pr.d, pr.h) == 1 || std::gcd(pr.d, pr.m) == 1) {
        rep.verified = true;
        rep.level = ProofLevel::theorem;
        return rep;
    }
    rep.level = ProofLevel::bounded;
    rep.verified = true;
    auto divs_d = divisors_of(pr.d);
    for (std::uint64_t v : smooth_divisors_up_to(pr.base, v_bound)) {
        std::uint64_t r = ord_dv(pr, v);
        for (std::uint64_t u : divs_d) {
            if (f_uv(pr, u, v) != r) {
                rep.verified = false;
                return rep;
            }
        }
    }
    return rep;
}

DensityValue delta_nu_closed(const ArithProfile& pr, std::uint64_t nu,
                             const AssumptionReport& assumption) {
    if (!assumption.verified)
        throw AssumptionNotVerified("delta_nu_closed: hypothesis not verified");
    if (gcd_supernatural(nu, pr.base) != nu)
        throw PreconditionViolated("delta_nu_closed: nu does not divide d^infty");
    DensityValue out{0, 0, DensityKind::delta_w};
    for (std::uint64_t u : divisors_of(pr.d)) {
        int mu = moebius(u);
        if (mu == 0) continue;
        if (u == 1) {
            out.value += 1;
            continue;
        }
        SupernaturalBase ub(u);
        std::uint64_t dh_part = 1, q1_part = 1;
        for (std::uint64_t l : ub.primes) {
            dh_part *= pow_u64(l, val(pr.d, l) + val(pr.h, l));
            q1_part *= pow_u64(l, val_qpow_minus1(pr.q(), pr.f_bar, l));
        }
        std::uint64_t nu_part = gcd_supernatural(nu, ub);
        std::uint64_t den = u * q1_part * nu_part * eta(pr, nu, u);
        out.value += mu * frac(dh_part, den);
    }
    return out;
}

DensityValue d3_series(const ArithProfile& pr, const mpq_class& epsilon) {
    if (epsilon <= 0) throw PreconditionViolated("d3_series: epsilon <= 0");
    mpq_class prefactor =
        frac(arith_suite(pr.d).phi, pr.d) / mpq_class(static_cast<unsigned long>(pr.f));
    mpq_class full = 1;  // sum over all w | d^infty of 1/w = prod l/(l-1)
    for (std::uint64_t l : pr.base.primes) full *= frac(l, l - 1);

    std::uint64_t W = 16;
    std::vector<std::uint64_t> ws;
    mpq_class tail;
    while (true) {
        ws = smooth_divisors_up_to(pr.base, W);
        mpq_class partial = 0;
        for (std::uint64_t w : ws) partial += frac(1, w);
        tail = prefactor * (full - partial);
        if (tail <= epsilon || W > (1ULL << 61)) break;
        W *= 2;
    }

    DensityValue out{0, tail, DensityKind::series_truncated};
    for (std::uint64_t w : ws) out.value += delta_w(pr, w).value / frac(w, 1);
    out.value *= prefactor;
    return out;
}

ClosedFormResult d3_closed(const ArithProfile& pr, std::uint64_t v_bound) {
    AssumptionReport rep = assumption_check(pr, v_bound);
    if (!rep.verified)
        throw AssumptionNotVerified("d3_closed: hypothesis fails below v_bound");

    mpq_class C = 0;
    if (pr.p_flag) {
        unsigned v2qp1 = val_qpow_minus1(pr.q(), 2 * pr.f_bar, 2) -
                         val_qpow_minus1(pr.q(), pr.f_bar, 2);  // v_2(q^fbar + 1)
        C = mpq_class(3, 4) + frac(1, pow_u64(2, v2qp1 + 1));
    }

    mpq_class prod = frac(1, pr.f_bar);
    for (std::uint64_t l : pr.base.primes) {
        std::uint64_t num = pow_u64(l, val(pr.d, l) + val(pr.h, l));
        std::uint64_t den = (l + 1) * pow_u64(l, val_qpow_minus1(pr.q(), pr.f_bar, l));
        mpq_class term = frac(num, den);
        if (l == 2 && pr.p_flag) term *= C;
        prod *= 1 - term;
    }
    return {DensityValue{prod, 0, DensityKind::closed_form}, rep};
}

}  // namespace ffod
