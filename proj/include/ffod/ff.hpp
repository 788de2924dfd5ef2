#ifndef FFOD_FF_HPP
#define FFOD_FF_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ffod/errors.hpp"

namespace ffod {

/// F_q with q = p^k, q <= 2^16.  Elements are codes 0..q-1 encoding the
/// coefficient vector over F_p in base p (lowest coefficient first).
/// Immutable after construction; share via shared_ptr.
class FieldSpec {
public:
    using Ptr = std::shared_ptr<const FieldSpec>;

    /// modulus: coefficients over F_p, lowest first, length k+1, monic.
    /// If omitted and k > 1, the canonical modulus is the first monic
    /// irreducible of degree k in ascending base-p coefficient-code order.
    static Ptr make(std::uint64_t p, unsigned k,
                    std::optional<std::vector<std::uint32_t>> modulus = {});

    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    std::uint32_t generator() const { return generator_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, const mpz_class& e) const;

    /// Coefficient-space product (no exp/log tables); table cross-check.
    std::uint32_t mul_via_coeffs(std::uint32_t a, std::uint32_t b) const;

    /// Least m >= 1 with x^m = 1.  Throws ZeroElement.
    std::uint64_t unit_order(std::uint32_t x) const;

    std::string print_elem(std::uint32_t x) const;
    std::uint32_t parse_elem(const std::string& s) const;

    const std::vector<std::uint32_t>& exp_table() const { return exp_; }
    const std::vector<std::uint32_t>& log_table() const { return log_; }

    bool same(const FieldSpec& other) const;

private:
    FieldSpec() = default;

    std::uint64_t p_ = 0;
    unsigned k_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::uint32_t generator_ = 0;
    std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, 0 <= i < q-1
    std::vector<std::uint32_t> log_;  // log_[x] for x != 0
    std::vector<std::uint32_t> addp_; // p x p addition table over F_p
};

/// Element with owning-field identity, for call sites that want checked ops.
struct FFElem {
    std::uint32_t code = 0;
    FieldSpec::Ptr field;

    FFElem() = default;
    FFElem(std::uint32_t c, FieldSpec::Ptr f) : code(c), field(std::move(f)) {}

    friend FFElem operator+(const FFElem& a, const FFElem& b);
    friend FFElem operator-(const FFElem& a, const FFElem& b);
    friend FFElem operator*(const FFElem& a, const FFElem& b);
    friend FFElem operator/(const FFElem& a, const FFElem& b);
    friend bool operator==(const FFElem& a, const FFElem& b);
    FFElem pow(const mpz_class& e) const;
};

}  // namespace ffod

#endif
