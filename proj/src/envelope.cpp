#include "sector_primes/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sector_primes {

namespace {

double ratio(std::uint64_t count, double x) { return static_cast<double>(count) * std::log(x) / x; }

// Point where count * ln x / x falls to `level`, searched right of `from`
// (the ratio is decreasing there).
double crossing_point(std::uint64_t count, double level, double from) {
    double lo = std::max(from, std::numbers::e);
    double hi = 2.0 * lo;
    while (ratio(count, hi) > level) hi *= 2.0;
    for (int i = 0; i < 200 && lo < hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (ratio(count, mid) > level ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

EnvelopeTracker::EnvelopeTracker(const SectorParams& params)
    : lower_factor_(std::exp(-params.beta / (2.0 * params.y))),
      upper_factor_(std::exp(params.beta / (2.0 * params.y))),
      beta_over_2y_(params.beta / (2.0 * params.y)) {}

double EnvelopeTracker::grid_point(std::uint64_t index) {
    return std::exp2(1.0 + static_cast<double>(index) / 8.0);
}

void EnvelopeTracker::fail_at(EnvelopeState& st, double x) const {
    st.fail_point = st.has_failure ? std::max(st.fail_point, x) : x;
    st.has_failure = true;
    st.upper_margin = std::numeric_limits<double>::infinity();
    st.lower_margin = std::numeric_limits<double>::infinity();
}

void EnvelopeTracker::check(EnvelopeState& st, double x, std::uint64_t count, bool lower_edge,
                            bool upper_edge) const {
    ++st.samples;
    const double r = ratio(count, x);
    bool failed = false;
    if (lower_edge && r < lower_factor_) {
        st.max_lower_violation = x;
        st.has_lower_violation = true;
        failed = true;
    }
    if (upper_edge && r > upper_factor_) {
        st.max_upper_violation = x;
        st.has_upper_violation = true;
        failed = true;
    }
    if (failed) {
        fail_at(st, x);
        return;
    }
    if (upper_edge) st.upper_margin = std::min(st.upper_margin, upper_factor_ - r);
    if (lower_edge) st.lower_margin = std::min(st.lower_margin, r - lower_factor_);
}

void EnvelopeTracker::observe(const Segment& segment) {
    EnvelopeState& st = state_;
    for (const std::uint64_t prime : segment.primes) {
        const auto p = static_cast<double>(prime);
        if (st.pending_upper) {
            fail_at(st, std::min(st.pending_x, p));
            st.pending_upper = false;
        }
        for (double g = grid_point(st.grid_index); g < p; g = grid_point(++st.grid_index))
            check(st, g, st.prime_count, true, true);

        // Just below p: lowest ratio on the gap that ends here.
        if (st.prime_count > 0) {
            ++st.samples;
            const double r = ratio(st.prime_count, p);
            if (r < lower_factor_) {
                st.max_lower_violation = p;
                st.has_lower_violation = true;
                fail_at(st, p);
            } else {
                st.lower_margin = std::min(st.lower_margin, r - lower_factor_);
            }
        }

        ++st.prime_count;
        // At p: highest ratio on the gap that starts here (ln x / x peaks at e).
        ++st.samples;
        const double at = std::max(p, std::numbers::e);
        const double r = ratio(st.prime_count, at);
        if (r > upper_factor_) {
            st.max_upper_violation = p;
            st.has_upper_violation = true;
            // The violation covers [p, x*); x* is settled when the next prime arrives.
            fail_at(st, p);
            st.pending_x = crossing_point(st.prime_count, upper_factor_, at);
            st.pending_upper = true;
        } else {
            st.upper_margin = std::min(st.upper_margin, upper_factor_ - r);
        }
    }
}

EnvelopeReport EnvelopeTracker::finish(std::uint64_t limit) const {
    EnvelopeState st = state_;
    const auto x_limit = static_cast<double>(limit);
    bool reached = true;
    if (st.pending_upper) {
        if (st.pending_x >= x_limit) reached = false;
        fail_at(st, std::min(st.pending_x, x_limit));
        st.pending_upper = false;
    }
    for (double g = grid_point(st.grid_index); g <= x_limit; g = grid_point(++st.grid_index))
        check(st, g, st.prime_count, true, true);
    check(st, x_limit, st.prime_count, true, true);
    if (st.has_failure && st.fail_point >= x_limit) reached = false;

    EnvelopeReport report;
    report.beta_over_2y = beta_over_2y_;
    report.lower_factor = lower_factor_;
    report.upper_factor = upper_factor_;
    report.limit = limit;
    report.samples_checked = st.samples;
    if (st.has_upper_violation) report.max_upper_violation_x = st.max_upper_violation;
    if (st.has_lower_violation) report.max_lower_violation_x = st.max_lower_violation;
    if (reached) {
        report.M_found = st.has_failure ? st.fail_point : 2.0;
        if (std::isfinite(st.upper_margin)) report.min_upper_margin = st.upper_margin;
        if (std::isfinite(st.lower_margin)) report.min_lower_margin = st.lower_margin;
    }
    return report;
}

EnvelopeReport find_envelope_M(const SectorParams& params, const SieveConfig& config) {
    EnvelopeTracker tracker(params);
    sieve_stream(config, [&](const Segment& seg) { tracker.observe(seg); });
    return tracker.finish(config.limit);
}

}  // namespace sector_primes
