#pragma once

#include <cstdint>
#include <optional>

#include "sector_primes/phase.hpp"

namespace sector_primes {

/// Constants of the divergent comparison series for one instance.
///
/// c = y pi (e^{-beta/2y} - e^{-3beta/2y}) > 0 and
/// d = y alpha (e^{-beta/2y} - e^{-3beta/2y}) + y beta (e^{-beta/2y} + e^{-3beta/2y}).
/// N is the last shell index for which bounds are *not* asserted; M is the
/// empirical envelope threshold the N was derived from, when one was found.
struct BoundConstants {
    double c = 0.0;
    double d = 0.0;
    std::optional<std::uint64_t> N;
    std::optional<double> M;

    friend bool operator==(const BoundConstants&, const BoundConstants&) = default;
};

/// c and d only. The differences of exponentials are evaluated through
/// expm1 so large y does not cancel.
BoundConstants constants_of(const SectorParams& params);

/// Least N0 such that every n > N0 has positive shell-count and reciprocal
/// bounds for both shell kinds (which also makes every denominator positive).
std::uint64_t positivity_threshold(const SectorParams& params);

/// Least N with exp((2(N+1)pi - beta - alpha)/y) > M, raised to
/// positivity_threshold() when that is larger. Throws DomainError if M <= 0.
std::uint64_t find_N(const SectorParams& params, double M);

/// N used by the bound functions: constants.N if set, else positivity_threshold().
std::uint64_t effective_N(const SectorParams& params, const BoundConstants& constants);

/// Lower bound on the number of primes in shell (kind, n), simplified
/// single-fraction-pair form. Throws PreconditionError if n <= N.
double shell_count_lower_bound(const SectorParams& params, const BoundConstants& constants,
                               ShellKind kind, std::uint64_t n);

/// The same bound written as e^{-b} hi/ln hi - e^{b} lo/ln lo on the shell
/// endpoints, before simplification. No precondition checks.
double shell_count_lower_bound_unsimplified(const SectorParams& params, ShellKind kind,
                                            std::uint64_t n);

/// Lower bound (2cn - d)/((2n pi - alpha)^2 - beta^2) for A shells and
/// (c(2n+1) - d)/(((2n+1)pi - alpha)^2 - beta^2) for B shells on the
/// reciprocal sum over the shell. Throws PreconditionError naming the failed
/// inequality when n <= N, the numerator is negative or the denominator is not
/// positive.
double shell_recip_lower_bound(const SectorParams& params, const BoundConstants& constants,
                               ShellKind kind, std::uint64_t n);

/// Unsimplified two-fraction form of the same reciprocal bound:
/// y e^{-beta/2y}/(X + beta) - y e^{-3beta/2y}/(X - beta), X = 2n pi - alpha
/// (or (2n+1)pi - alpha), evaluated in extended precision. No precondition checks.
double shell_recip_two_fraction(const SectorParams& params, ShellKind kind, std::uint64_t n);

/// Compensated sum of shell_recip_lower_bound over n in [from_n, to_n].
/// Throws PreconditionError if from_n <= N. Returns 0 when to_n < from_n.
double comparison_series_partial_sum(const SectorParams& params, const BoundConstants& constants,
                                     ShellKind kind, std::uint64_t from_n, std::uint64_t to_n);

/// Smallest to_n with comparison_series_partial_sum(N+1, to_n) > target, scanning
/// at most max_terms terms. nullopt if the target is not reached.
std::optional<std::uint64_t> series_crossing(const SectorParams& params,
                                             const BoundConstants& constants, ShellKind kind,
                                             double target, std::uint64_t max_terms);

}  // namespace sector_primes
