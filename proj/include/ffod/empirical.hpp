#ifndef FFOD_EMPIRICAL_HPP
#define FFOD_EMPIRICAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ffod/density.hpp"
#include "ffod/profile.hpp"

namespace ffod {

/// Exact multiplicative order of a in (A/P)^x.  Factors q^{deg P} - 1 (cap
/// applies).  Throws BadReduction when v_P(a) != 0.
mpz_class order_mod(const RatFunc& a, const Poly& P);

/// One full pass over the monic irreducibles of degree N: for every P with
/// v_P(a) = 0, the valuations v_l(ord_P(a)) at the scan primes, histogrammed.
struct ScanResult {
    unsigned N = 0;
    std::uint64_t group_order = 0;         // q^N - 1
    std::vector<std::uint64_t> primes;     // scan primes, ascending
    std::vector<unsigned> vcap;            // v_l(q^N - 1) per prime
    std::vector<std::uint64_t> hist;       // index = mixed-radix (vcap+1) tuple
    std::uint64_t excluded = 0;            // primes with v_P(a) != 0
    std::uint64_t irreducible = 0;         // I_N

    std::size_t pack(const std::vector<unsigned>& v) const;
    /// # P with l^{e_l} | ord_P(a) for all given (l, e_l); 0 demands nothing.
    std::uint64_t count_ord_multiple_of(std::uint64_t d) const;
    /// # P with ord_P(a) | (q^N - 1)/dd (dd smooth over the scan primes).
    std::uint64_t count_ord_divides_quotient(std::uint64_t dd) const;
};

/// Shared, cached per-degree scanner for one (field, a); safe for reuse
/// across every d whose primes are covered.
class OrderScanner {
public:
    OrderScanner(FieldSpec::Ptr fs, RatFunc a, std::vector<std::uint64_t> primes,
                 unsigned budget_log2 = 30, unsigned workers = 0);

    const ScanResult& scan(unsigned N);
    const FieldSpec::Ptr& field() const { return fs_; }
    const RatFunc& a() const { return a_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    unsigned budget_log2() const { return budget_log2_; }

private:
    FieldSpec::Ptr fs_;
    RatFunc a_;
    std::vector<std::uint64_t> primes_;
    unsigned budget_log2_;
    unsigned workers_;
    std::mutex mu_;
    std::map<unsigned, std::unique_ptr<ScanResult>> cache_;
};

struct SplitIdentityReport {
    std::uint64_t lhs = 0;
    std::int64_t rhs = 0;
    bool pass = false;
};

struct CountRecord {
    std::uint64_t N = 0;
    mpz_class I_N;
    std::uint64_t R = 0;
    std::uint64_t a_excluded = 0;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> splits;
    mpq_class cesaro;
    mpq_class normalized_error;
};

struct D1Probe {
    std::vector<std::pair<std::uint64_t, mpq_class>> zero_sequence;  // (N, ratio)
    struct YPoint {
        std::uint64_t y = 0;
        std::optional<mpq_class> ratio;  // empty when beyond budget
        mpq_class delta;                 // proportion_density(y)
    };
    std::vector<YPoint> y_sequence;
};

/// Empirical counts for one profile, backed by a (possibly shared) scanner.
class Counter {
public:
    Counter(ArithProfile profile, unsigned budget_log2 = 30, unsigned workers = 0,
            std::shared_ptr<OrderScanner> scanner = nullptr);

    const ArithProfile& profile() const { return pr_; }
    OrderScanner& scanner() { return *scanner_; }

    std::uint64_t count_R(unsigned N);
    std::uint64_t split_count(std::uint64_t n, std::uint64_t dd, unsigned N);
    SplitIdentityReport split_identity_check(unsigned N);
    mpq_class cesaro(unsigned N);
    mpq_class normalized_error(unsigned N);
    CountRecord record(unsigned N);
    D1Probe d1_probe(unsigned steps);

private:
    ArithProfile pr_;
    std::shared_ptr<OrderScanner> scanner_;
};

}  // namespace ffod

#endif
