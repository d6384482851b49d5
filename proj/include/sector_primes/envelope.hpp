#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "sector_primes/phase.hpp"
#include "sector_primes/sieve.hpp"

namespace sector_primes {

/// Outcome of checking e^{-b} x/ln x <= pi(x) <= e^{b} x/ln x, b = beta/2y,
/// on the sampled grid up to the sieve limit.
struct EnvelopeReport {
    double beta_over_2y = 0.0;
    double lower_factor = 0.0;  // e^{-b}
    double upper_factor = 0.0;  // e^{b}
    std::uint64_t limit = 0;
    /// Least sampled x0 such that every sample in (x0, limit] is inside the
    /// band; nullopt when the band fails at the limit itself ("not reached").
    std::optional<double> M_found;
    std::optional<double> max_upper_violation_x;
    std::optional<double> max_lower_violation_x;
    std::uint64_t samples_checked = 0;
    /// Smallest distances of pi(x) ln x / x from each band edge over the
    /// samples above M_found.
    std::optional<double> min_upper_margin;
    std::optional<double> min_lower_margin;

    bool reached() const { return M_found.has_value(); }

    friend bool operator==(const EnvelopeReport&, const EnvelopeReport&) = default;
};

/// Streaming state of the envelope check. pi(x) is constant between primes
/// and x/ln x is increasing past e, so the ratio's extremes on each gap are
/// taken at its ends: with count pi(p) at p (upper edge) and with pi(p)-1 just
/// below p (lower edge). A geometric grid of extra points is checked as well.
struct EnvelopeState {
    std::uint64_t prime_count = 0;
    std::uint64_t grid_index = 0;
    std::uint64_t samples = 0;
    double fail_point = 0.0;      // band fails somewhere at or below this x
    bool has_failure = false;
    bool pending_upper = false;   // upper edge failed at the last prime; resolves at the next one
    double pending_x = 0.0;       // where the pending upper violation ends
    double max_upper_violation = 0.0;
    bool has_upper_violation = false;
    double max_lower_violation = 0.0;
    bool has_lower_violation = false;
    double upper_margin = std::numeric_limits<double>::infinity();
    double lower_margin = std::numeric_limits<double>::infinity();

    friend bool operator==(const EnvelopeState&, const EnvelopeState&) = default;
};

class EnvelopeTracker {
public:
    explicit EnvelopeTracker(const SectorParams& params);

    /// Feed segments in ascending order.
    void observe(const Segment& segment);

    /// Closes the check at x = limit.
    EnvelopeReport finish(std::uint64_t limit) const;

    const EnvelopeState& state() const { return state_; }
    void restore(const EnvelopeState& state) { state_ = state; }

    /// Integer sample points of the geometric grid (ratio 2^{1/8}), ascending.
    static double grid_point(std::uint64_t index);

private:
    void check(EnvelopeState& st, double x, std::uint64_t count, bool lower_edge, bool upper_edge) const;
    void fail_at(EnvelopeState& st, double x) const;

    double lower_factor_;
    double upper_factor_;
    double beta_over_2y_;
    EnvelopeState state_;
};

/// Runs the sieve to config.limit and reports the empirical threshold M.
EnvelopeReport find_envelope_M(const SectorParams& params, const SieveConfig& config);

}  // namespace sector_primes
