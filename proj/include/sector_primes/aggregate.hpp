#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sector_primes/bounds.hpp"
#include "sector_primes/compensated_sum.hpp"
#include "sector_primes/phase.hpp"
#include "sector_primes/sieve.hpp"

namespace sector_primes {

enum class Verdict { Holds, Violated, NotApplicable };

std::string_view to_string(Verdict verdict);

/// Observed content of one shell next to its closed-form lower bounds.
struct ShellStats {
    ShellKind kind = ShellKind::A;
    std::uint64_t n = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t count = 0;
    double recip_sum = 0.0;
    std::optional<double> count_bound;
    std::optional<double> recip_bound;
    bool complete = false;  // hi <= limit, so count and sum are exact
    bool above_M = false;   // lo > M_found
    Verdict count_ok = Verdict::NotApplicable;
    Verdict recip_ok = Verdict::NotApplicable;

    friend bool operator==(const ShellStats&, const ShellStats&) = default;
};

/// A prime whose shell membership and sector membership disagree.
struct BoundaryException {
    std::uint64_t p = 0;
    std::string detail;

    friend bool operator==(const BoundaryException&, const BoundaryException&) = default;
};

struct SectorSums {
    double sum_plus = 0.0;
    double sum_minus = 0.0;
    double sum_all = 0.0;
    std::uint64_t count_plus = 0;
    std::uint64_t count_minus = 0;
    std::uint64_t count_all = 0;
    std::uint64_t count_outside_shells = 0;
    std::uint64_t a_not_plus = 0;   // |A \ P+|
    std::uint64_t b_not_minus = 0;  // |B \ P-|
    std::uint64_t boundary_flagged = 0;
    std::vector<BoundaryException> boundary_exceptions;

    friend bool operator==(const SectorSums&, const SectorSums&) = default;
};

/// Sums as of x = 10^k.
struct DecadeRow {
    std::uint64_t x = 0;
    double sum_plus = 0.0;
    double sum_minus = 0.0;
    double sum_all = 0.0;
    std::uint64_t count_all = 0;

    friend bool operator==(const DecadeRow&, const DecadeRow&) = default;
};

struct ShellCell {
    std::uint64_t count = 0;
    NeumaierSum recip;

    friend bool operator==(const ShellCell&, const ShellCell&) = default;
};

/// Everything needed to continue an accumulation bit-for-bit.
struct AccumulatorState {
    std::uint64_t next_segment = 0;
    std::uint64_t covered_hi = 1;  // every prime <= covered_hi has been consumed
    std::vector<ShellCell> a_shells;
    std::vector<ShellCell> b_shells;
    NeumaierSum plus;
    NeumaierSum minus;
    NeumaierSum all;
    std::uint64_t count_plus = 0;
    std::uint64_t count_minus = 0;
    std::uint64_t count_all = 0;
    std::uint64_t count_outside_shells = 0;
    std::uint64_t a_not_plus = 0;
    std::uint64_t b_not_minus = 0;
    std::uint64_t boundary_flagged = 0;
    std::vector<BoundaryException> exceptions;
    std::vector<DecadeRow> decades;

    friend bool operator==(const AccumulatorState&, const AccumulatorState&) = default;
};

/// Serial fold of the ordered prime stream: ascending primes, fixed summation
/// order, compensated sums.
class SectorAccumulator {
public:
    explicit SectorAccumulator(const SectorParams& params) : params_(params) {}

    /// Segments must arrive in ascending order. Primes <= covered_hi (from a
    /// resumed state) are skipped.
    void consume(const Segment& segment);

    SectorSums sums() const;

    /// Decade rows for every 10^k <= limit.
    std::vector<DecadeRow> decades(std::uint64_t limit) const;

    /// Shells A0, B0, A1, B1, ... whose interval starts below limit, with
    /// bounds and verdicts. Verdicts apply to complete shells with lo > M
    /// and n > N (N = effective_N(constants)).
    std::vector<ShellStats> shells(std::uint64_t limit, const BoundConstants& constants,
                                   std::optional<double> M) const;

    const SectorParams& params() const { return params_; }
    const AccumulatorState& state() const { return state_; }
    void restore(const AccumulatorState& state) { state_ = state; }

private:
    void add_prime(std::uint64_t p);
    void snapshot_decades_below(std::uint64_t p);

    SectorParams params_;
    AccumulatorState state_;
};

struct AccumulateResult {
    std::vector<ShellStats> shells;
    SectorSums sums;
    std::vector<DecadeRow> decades;
};

/// Sieve to config.limit and fold every prime. Uses constants.N/M as given.
AccumulateResult accumulate(const SectorParams& params, const BoundConstants& constants,
                            const SieveConfig& config);

}  // namespace sector_primes
