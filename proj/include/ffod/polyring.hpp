#ifndef FFOD_POLYRING_HPP
#define FFOD_POLYRING_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ffod/ff.hpp"

namespace ffod {

/// Element of A = F_q[T].  Coefficients are field codes, lowest degree first,
/// canonical (no trailing zeros); the zero polynomial has degree -1.
class Poly {
public:
    Poly() = default;
    Poly(FieldSpec::Ptr fs, std::vector<std::uint32_t> coeffs);

    static Poly zero(FieldSpec::Ptr fs) { return Poly(std::move(fs), {}); }
    static Poly constant(FieldSpec::Ptr fs, std::uint32_t c);
    static Poly t(FieldSpec::Ptr fs) { return Poly(std::move(fs), {0, 1}); }

    const FieldSpec::Ptr& field() const { return fs_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    std::uint32_t lead() const;
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Poly monic() const;
    Poly scaled(std::uint32_t c) const;
    Poly shifted(unsigned n) const;  // multiply by T^n
    std::uint32_t eval(std::uint32_t x) const;
    Poly derivative() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

private:
    FieldSpec::Ptr fs_;
    std::vector<std::uint32_t> c_;
};

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly rem(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic
Poly powmod(const Poly& a, const mpz_class& e, const Poly& mod);

/// Reduced fraction num/den with monic denominator.
struct RatFunc {
    Poly num;
    Poly den;

    static RatFunc make(Poly num, Poly den);
    static RatFunc from_poly(Poly p);
    const FieldSpec::Ptr& field() const { return num.field(); }
    bool is_constant() const { return num.is_constant() && den.is_constant(); }
    bool is_zero() const { return num.is_zero(); }
};

/// x = lambda * x~ with x~ a quotient of monic polynomials.
std::pair<std::uint32_t, RatFunc> monic_part(const RatFunc& x);

bool is_irreducible(const Poly& f);

struct PolyFactorization {
    std::uint32_t lead = 1;
    std::vector<std::pair<Poly, unsigned>> factors;  // monic irreducible, exponent
};
PolyFactorization factorize(const Poly& f);

/// I_N = (1/N) sum_{e|N} mu(e) q^{N/e}
mpz_class gauss_count(std::uint64_t q, unsigned N);

/// Index encoding of monic degree-N polynomials: idx = sum coeff_i * q^i, i < N.
Poly monic_from_index(const FieldSpec::Ptr& fs, unsigned N, std::uint64_t idx);
std::uint64_t monic_index(const Poly& f);

/// Composite-mark bitmap over all q^N monic degree-N polynomials, built by a
/// product sieve; cached per (field, N).  Bit clear = irreducible.
struct SieveResult {
    unsigned N = 0;
    std::uint64_t total = 0;        // q^N
    std::uint64_t irreducible = 0;  // = I_N
    std::vector<std::uint64_t> composite;

    bool is_irreducible(std::uint64_t idx) const {
        return (composite[idx >> 6] >> (idx & 63) & 1) == 0;
    }
};

/// Throws BudgetExceeded when q^N > 2^budget_log2.
const SieveResult& irreducible_sieve(const FieldSpec::Ptr& fs, unsigned N,
                                     unsigned budget_log2 = 30,
                                     unsigned workers = 0);
void sieve_cache_clear();

/// Deterministic enumeration (ascending index order).
void for_each_irreducible(const FieldSpec::Ptr& fs, unsigned N,
                          const std::function<void(const Poly&)>& fn,
                          unsigned budget_log2 = 30);
std::vector<Poly> irreducibles(const FieldSpec::Ptr& fs, unsigned N,
                               unsigned budget_log2 = 30);

std::string print_poly(const Poly& f);
Poly parse_poly(const FieldSpec::Ptr& fs, const std::string& s);
std::string print_ratfunc(const RatFunc& x);
RatFunc parse_ratfunc(const FieldSpec::Ptr& fs, const std::string& s);

}  // namespace ffod

#endif
