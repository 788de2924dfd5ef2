#include "ffod/arith.hpp"

#include <algorithm>
#include <numeric>

namespace ffod {

mpz_class Factorization::value() const {
    mpz_class v = 1;
    for (const auto& [p, e] : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) n /= p, ++e;
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime_u64(std::uint64_t n) {
    mpz_class z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

SupernaturalBase::SupernaturalBase(std::uint64_t d_) : d(d_) {
    if (d < 2) throw DLessThanTwo("SupernaturalBase requires d >= 2");
    for (const auto& [p, e] : factor_u64(d)) primes.push_back(p);
}

int moebius(std::uint64_t n) {
    if (n == 0) throw PreconditionViolated("moebius(0)");
    int sign = 1;
    for (const auto& [p, e] : factor_u64(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

ArithSuite arith_suite(std::uint64_t n) {
    if (n == 0) throw PreconditionViolated("arith_suite(0)");
    ArithSuite s{1, 1, 0, 1, 1};
    for (const auto& [p, e] : factor_u64(n)) {
        std::uint64_t pe = pow_u64(p, e);
        s.phi *= pe / p * (p - 1);
        s.tau *= e + 1;
        s.omega += 1;
        s.psi *= pe / p * (p + 1);
        s.rad *= p;
    }
    return s;
}

unsigned val(std::uint64_t n, std::uint64_t l) {
    unsigned v = 0;
    while (n % l == 0) n /= l, ++v;
    return v;
}

unsigned val(const mpz_class& n, std::uint64_t l) {
    mpz_class lz(static_cast<unsigned long>(l));
    mpz_class rem;
    return static_cast<unsigned>(
        mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), lz.get_mpz_t()));
}

unsigned val_qpow_minus1(std::uint64_t q, std::uint64_t r, std::uint64_t l) {
    if (q % l == 0) throw NotCoprime("val_qpow_minus1: l | q");
    mpz_class qz(static_cast<unsigned long>(q));
    if (l == 2) {
        // q odd: v_2(q^r - 1) = v_2(q-1) for odd r, else v_2(q^2-1) + v_2(r) - 1
        unsigned v1 = val(qz - 1, 2);
        if (r % 2 == 1) return v1;
        return v1 + val(qz + 1, 2) + val(r, 2) - 1;
    }
    std::uint64_t e = mult_order(q % l, l);
    if (r % e != 0) return 0;
    // v_l(q^e - 1) via powers mod l^K, raising K until the residue separates
    unsigned base;
    for (unsigned K = 24;; K *= 2) {
        mpz_class M;
        mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(l), K);
        mpz_class x;
        mpz_powm_ui(x.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(e),
                    M.get_mpz_t());
        if (x == 1) continue;
        base = val(x - 1, l);
        break;
    }
    return base + val(r / e, l);
}

std::uint64_t gcd_supernatural(std::uint64_t k, const SupernaturalBase& base) {
    if (k == 0) throw PreconditionViolated("gcd_supernatural(0, .)");
    std::uint64_t g = 1;
    for (std::uint64_t l : base.primes) g *= pow_u64(l, val(k, l));
    return g;
}

mpz_class gcd_supernatural(const mpz_class& k, const SupernaturalBase& base) {
    if (k <= 0) throw PreconditionViolated("gcd_supernatural(<=0, .)");
    mpz_class g = 1;
    for (std::uint64_t l : base.primes) {
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(l), val(k, l));
        g *= pe;
    }
    return g;
}

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    if (n == 0) throw PreconditionViolated("divisors_of(0)");
    std::vector<std::uint64_t> divs{1};
    for (const auto& [p, e] : factor_u64(n)) {
        std::size_t sz = divs.size();
        std::uint64_t pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

namespace {

void smooth_rec(const std::vector<std::uint64_t>& primes, std::size_t i,
                std::uint64_t cur, std::uint64_t bound,
                std::vector<std::uint64_t>& out) {
    if (i == primes.size()) {
        out.push_back(cur);
        return;
    }
    std::uint64_t l = primes[i];
    for (std::uint64_t v = cur;; ) {
        smooth_rec(primes, i + 1, v, bound, out);
        if (v > bound / l) break;
        v *= l;
    }
}

}  // namespace

std::vector<std::uint64_t> smooth_divisors_up_to(const SupernaturalBase& base,
                                                 std::uint64_t bound) {
    if (bound == 0) throw PreconditionViolated("smooth_divisors_up_to: bound 0");
    std::vector<std::uint64_t> out;
    smooth_rec(base.primes, 0, 1, bound, out);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

mpz_class pollard_rho(const mpz_class& n, unsigned long seed) {
    // Brent's cycle variant
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    while (true) {
        mpz_class y = rng.get_z_range(n - 3) + 2;
        mpz_class c = rng.get_z_range(n - 1) + 1;
        mpz_class x = y, d = 1, q = 1, ys = y;
        unsigned long r = 1;
        const unsigned long m = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && d == 1; k += m) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                mpz_class t = abs(x - ys);
                mpz_gcd(d.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (d != n) return d;
    }
}

void factor_rec(mpz_class n, std::vector<mpz_class>& primes) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
        primes.push_back(n);
        return;
    }
    mpz_class d = pollard_rho(n, 0x5eed + primes.size());
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

}  // namespace

Factorization factor(const mpz_class& n, unsigned bit_cap) {
    if (n < 1) throw PreconditionViolated("factor: n < 1");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > bit_cap)
        throw TooLarge("factor: input exceeds bit cap");
    Factorization f;
    mpz_class m = n;
    for (std::uint64_t p = 2; p < 100000 && m > 1; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                m /= static_cast<unsigned long>(p);
                ++e;
            }
            f.factors.emplace_back(mpz_class(static_cast<unsigned long>(p)), e);
        }
        if (mpz_class(p) * p > m) break;
    }
    if (m > 1) {
        std::vector<mpz_class> primes;
        factor_rec(m, primes);
        std::sort(primes.begin(), primes.end());
        for (std::size_t i = 0; i < primes.size();) {
            std::size_t j = i;
            while (j < primes.size() && primes[j] == primes[i]) ++j;
            f.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
            i = j;
        }
    }
    return f;
}

mpz_class mult_order(const mpz_class& q, const mpz_class& n) {
    if (n < 1) throw PreconditionViolated("mult_order: n < 1");
    if (n == 1) return 1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    if (g != 1) throw NotCoprime("mult_order: gcd(q, n) > 1");
    // descend from the group order phi(n)
    Factorization fn = factor(n);
    mpz_class t = 1;
    for (const auto& [p, e] : fn.factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        t *= pe / p * (p - 1);
    }
    Factorization ft = factor(t);
    for (const auto& [p, e] : ft.factors) {
        for (unsigned i = 0; i < e; ++i) {
            mpz_class t2 = t / p;
            mpz_class r;
            mpz_powm(r.get_mpz_t(), q.get_mpz_t(), t2.get_mpz_t(),
                     n.get_mpz_t());
            if (r != 1) break;
            t = t2;
        }
    }
    return t;
}

std::uint64_t mult_order(std::uint64_t q, std::uint64_t n) {
    mpz_class o = mult_order(mpz_class(static_cast<unsigned long>(q)),
                             mpz_class(static_cast<unsigned long>(n)));
    return mpz_get_ui(o.get_mpz_t());
}

bool proposition_P(std::uint64_t q, std::uint64_t d, std::uint64_t f) {
    return val(d, 2) == 1 && q % 4 == 3 && f % 2 == 1;
}

mpz_class qpow_gcd_supernatural(std::uint64_t q, std::uint64_t m,
                                std::uint64_t n, const SupernaturalBase& base,
                                bool p_flag) {
    mpz_class qm;
    mpz_ui_pow_ui(qm.get_mpz_t(), static_cast<unsigned long>(q),
                  static_cast<unsigned long>(m));
    mpz_class qm1 = qm - 1;
    if (!mpz_divisible_ui_p(qm1.get_mpz_t(), static_cast<unsigned long>(base.d)))
        throw PreconditionViolated("qpow_gcd_supernatural: d does not divide q^m - 1");
    mpz_class r = gcd_supernatural(qm1, base) *
                  gcd_supernatural(mpz_class(static_cast<unsigned long>(n)), base);
    if (p_flag && n % 2 == 0) {
        mpz_class extra;
        mpz_ui_pow_ui(extra.get_mpz_t(), 2, val(qm + 1, 2) - 1);
        r *= extra;
    }
    return r;
}

std::uint64_t ord_via_formula(std::uint64_t q, std::uint64_t d, std::uint64_t f,
                              std::uint64_t v) {
    SupernaturalBase base(d);
    if (std::gcd(q, d) != 1) throw PreconditionViolated("ord_via_formula: (q,d) > 1");
    if (mult_order(q, d) != f) throw PreconditionViolated("ord_via_formula: f != ord_d(q)");
    if (gcd_supernatural(v, base) != v)
        throw PreconditionViolated("ord_via_formula: v does not divide d^infty");
    bool pcase = proposition_P(q, d, f) && v % 2 == 0;
    std::uint64_t exp = pcase ? 2 * f : f;
    // (q^exp - 1, dv) over the primes of d, valuations by lifting the exponent
    std::uint64_t g = 1;
    for (std::uint64_t l : base.primes) {
        unsigned vd = val(d, l) + val(v, l);
        unsigned vq = val_qpow_minus1(q, exp, l);
        g *= pow_u64(l, std::min(vd, vq));
    }
    std::uint64_t num = f * d * v * (pcase ? 2 : 1);
    if (num % g != 0)
        throw PreconditionViolated("ord_via_formula: non-integral result");
    return num / g;
}

}  // namespace ffod
