#ifndef FFOD_ARITH_HPP
#define FFOD_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ffod/errors.hpp"

namespace ffod {

/// Complete prime factorization, primes strictly increasing, exponents >= 1.
struct Factorization {
    std::vector<std::pair<mpz_class, unsigned>> factors;

    mpz_class value() const;
    bool empty() const { return factors.empty(); }
};

/// The supernatural number d^infty = prod_{l|d} l^infty: an integer d >= 2
/// together with its radical support.
struct SupernaturalBase {
    std::uint64_t d;
    std::vector<std::uint64_t> primes;  // radical support of d, ascending

    explicit SupernaturalBase(std::uint64_t d);
};

struct ArithSuite {
    std::uint64_t phi;
    std::uint64_t tau;
    unsigned omega;
    std::uint64_t psi;
    std::uint64_t rad;
};

int moebius(std::uint64_t n);
ArithSuite arith_suite(std::uint64_t n);

/// Factorization of a machine integer by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

/// Factorization with trial division + Brent-Pollard rho.  Throws TooLarge
/// beyond bit_cap (default 128).
Factorization factor(const mpz_class& n, unsigned bit_cap = 128);

/// l-adic valuation v_l(n).
unsigned val(std::uint64_t n, std::uint64_t l);
unsigned val(const mpz_class& n, std::uint64_t l);

/// v_l(q^r - 1) without materializing q^r, via lifting the exponent.
/// Valid for any r >= 1 and prime l with gcd(l, q) = 1.
unsigned val_qpow_minus1(std::uint64_t q, std::uint64_t r, std::uint64_t l);

/// (k, d^infty) = prod_{l|d} l^{v_l(k)}; completely multiplicative in k.
std::uint64_t gcd_supernatural(std::uint64_t k, const SupernaturalBase& base);
mpz_class gcd_supernatural(const mpz_class& k, const SupernaturalBase& base);

std::vector<std::uint64_t> divisors_of(std::uint64_t n);

/// All w | d^infty with w <= bound, ascending.
std::vector<std::uint64_t> smooth_divisors_up_to(const SupernaturalBase& base,
                                                 std::uint64_t bound);

/// Least t >= 1 with q^t = 1 (mod n).  Throws NotCoprime.
mpz_class mult_order(const mpz_class& q, const mpz_class& n);
std::uint64_t mult_order(std::uint64_t q, std::uint64_t n);

/// P : 2||d, q = 3 (mod 4) and 2 does not divide f.
bool proposition_P(std::uint64_t q, std::uint64_t d, std::uint64_t f);

/// (q^{mn} - 1, d^infty) = (q^m - 1, d^infty)(n, d^infty) * extra, where the
/// extra factor 2^{v_2(q^m+1)-1} applies exactly when p_flag && 2 | n.
/// Requires d | q^m - 1.
mpz_class qpow_gcd_supernatural(std::uint64_t q, std::uint64_t m,
                                std::uint64_t n, const SupernaturalBase& base,
                                bool p_flag);

/// ord_{dv}(q) from f = ord_d(q) by the two-branch order formula; v | d^infty.
std::uint64_t ord_via_formula(std::uint64_t q, std::uint64_t d, std::uint64_t f,
                              std::uint64_t v);

bool is_prime_u64(std::uint64_t n);

std::uint64_t pow_u64(std::uint64_t b, unsigned e);

}  // namespace ffod

#endif
