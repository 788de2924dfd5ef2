#ifndef FFOD_DENSITY_HPP
#define FFOD_DENSITY_HPP

#include <gmpxx.h>

#include "ffod/profile.hpp"

namespace ffod {

enum class DensityKind { proportion, delta_w, series_truncated, closed_form };

/// Exact rational density; for series_truncated the true value lies within
/// [value - tail_bound, value + tail_bound].
struct DensityValue {
    mpq_class value;
    mpq_class tail_bound;  // 0 for exact results
    DensityKind kind = DensityKind::proportion;
};

/// delta_q(a,d,N): exact 0 when f does not divide N.
DensityValue proportion_density(const ArithProfile& pr, std::uint64_t N);

/// The per-progression constant delta_w, w | d^infty.
DensityValue delta_w(const ArithProfile& pr, std::uint64_t w);

/// The w | d^infty index of the arithmetic progression containing N (f | N):
/// w(N) = (N/f, d^infty).
std::uint64_t partition_w(const ArithProfile& pr, std::uint64_t N);

/// 2^{v_2(q^fbar + 1)-1} when [P]=1 and 2 | (m,n), else 1.
std::uint64_t eta(const ArithProfile& pr, std::uint64_t m, std::uint64_t n);

enum class ProofLevel { theorem, bounded };

struct AssumptionReport {
    bool verified = false;
    ProofLevel level = ProofLevel::bounded;
    std::uint64_t v_bound = 0;
};

/// The closed-form hypothesis f_{u,v} = ord_{dv}(q): theorem-level when
/// (d,h) = 1 or (d,m) = 1, else checked for all v <= v_bound.
AssumptionReport assumption_check(const ArithProfile& pr,
                                  std::uint64_t v_bound = 10000);

/// delta(nu) of the per-w closed form; requires the assumption.
DensityValue delta_nu_closed(const ArithProfile& pr, std::uint64_t nu,
                             const AssumptionReport& assumption);

/// Series evaluation of delta_q(a,d) with exact tail bound <= epsilon.
DensityValue d3_series(const ArithProfile& pr, const mpq_class& epsilon);

struct ClosedFormResult {
    DensityValue density;
    AssumptionReport assumption;
};

/// Closed form of delta_q(a,d); throws AssumptionNotVerified when the
/// hypothesis fails the bounded check.
ClosedFormResult d3_closed(const ArithProfile& pr, std::uint64_t v_bound = 10000);

}  // namespace ffod

#endif
