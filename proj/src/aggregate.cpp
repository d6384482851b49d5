#include "sector_primes/aggregate.hpp"

#include <cstdio>

namespace sector_primes {

namespace {

constexpr std::size_t kMaxDecade = 19;  // 10^19 is the largest power of ten in 64 bits

std::uint64_t pow10(std::size_t k) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < k; ++i) v *= 10;
    return v;
}

std::string describe(const PhaseResult& ph) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "shell %s%llu with cos(theta)=%.17g, sector %s",
                  ph.shell ? std::string(to_string(ph.shell->kind)).c_str() : "-",
                  ph.shell ? static_cast<unsigned long long>(ph.shell->n) : 0ULL, ph.cos_theta,
                  std::string(to_string(ph.sector)).c_str());
    return buf;
}

DecadeRow row_of(const AccumulatorState& st, std::uint64_t x) {
    return DecadeRow{x, st.plus.value(), st.minus.value(), st.all.value(), st.count_all};
}

}  // namespace

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::NotApplicable: return "n/a";
    }
    return "n/a";
}

void SectorAccumulator::snapshot_decades_below(std::uint64_t p) {
    while (state_.decades.size() < kMaxDecade) {
        const std::uint64_t x = pow10(state_.decades.size() + 1);
        if (x >= p) break;
        state_.decades.push_back(row_of(state_, x));
    }
}

void SectorAccumulator::add_prime(std::uint64_t p) {
    snapshot_decades_below(p);
    const PhaseResult ph = phase_of(params_, p);
    const double term = 1.0 / static_cast<double>(p);

    state_.all += term;
    ++state_.count_all;
    if (ph.boundary_flag) ++state_.boundary_flagged;
    if (ph.sector == Sector::Plus) {
        state_.plus += term;
        ++state_.count_plus;
    } else if (ph.sector == Sector::Minus) {
        state_.minus += term;
        ++state_.count_minus;
    }

    if (ph.shell) {
        auto& cells = ph.shell->kind == ShellKind::A ? state_.a_shells : state_.b_shells;
        if (cells.size() <= ph.shell->n) cells.resize(ph.shell->n + 1);
        ShellCell& cell = cells[ph.shell->n];
        ++cell.count;
        cell.recip += term;
    } else {
        ++state_.count_outside_shells;
    }

    const bool in_a = ph.shell && ph.shell->kind == ShellKind::A;
    const bool in_b = ph.shell && ph.shell->kind == ShellKind::B;
    const bool plus = ph.sector == Sector::Plus;
    const bool minus = ph.sector == Sector::Minus;
    if (in_a && !plus) ++state_.a_not_plus;
    if (in_b && !minus) ++state_.b_not_minus;
    if (in_a != plus || in_b != minus) state_.exceptions.push_back({p, describe(ph)});
}

void SectorAccumulator::consume(const Segment& segment) {
    for (const std::uint64_t p : segment.primes) {
        if (p <= state_.covered_hi) continue;
        add_prime(p);
    }
    if (segment.hi > state_.covered_hi) state_.covered_hi = segment.hi;
    state_.next_segment = segment.index + 1;
}

SectorSums SectorAccumulator::sums() const {
    SectorSums out;
    out.sum_plus = state_.plus.value();
    out.sum_minus = state_.minus.value();
    out.sum_all = state_.all.value();
    out.count_plus = state_.count_plus;
    out.count_minus = state_.count_minus;
    out.count_all = state_.count_all;
    out.count_outside_shells = state_.count_outside_shells;
    out.a_not_plus = state_.a_not_plus;
    out.b_not_minus = state_.b_not_minus;
    out.boundary_flagged = state_.boundary_flagged;
    out.boundary_exceptions = state_.exceptions;
    return out;
}

std::vector<DecadeRow> SectorAccumulator::decades(std::uint64_t limit) const {
    std::vector<DecadeRow> rows;
    for (const DecadeRow& row : state_.decades)
        if (row.x <= limit) rows.push_back(row);
    for (std::size_t k = state_.decades.size() + 1; k <= kMaxDecade; ++k) {
        const std::uint64_t x = pow10(k);
        if (x > limit || x > state_.covered_hi) break;
        rows.push_back(row_of(state_, x));
    }
    return rows;
}

std::vector<ShellStats> SectorAccumulator::shells(std::uint64_t limit, const BoundConstants& constants,
                                                  std::optional<double> M) const {
    const std::uint64_t N = effective_N(params_, constants);
    const auto x_limit = static_cast<double>(limit);
    std::vector<ShellStats> out;
    for (std::uint64_t n = 0;; ++n) {
        bool any = false;
        for (const ShellKind kind : {ShellKind::A, ShellKind::B}) {
            const ShellInterval interval = shell_interval(params_, kind, n);
            if (!(interval.lo_exclusive < x_limit)) continue;
            any = true;
            ShellStats s;
            s.kind = kind;
            s.n = n;
            s.lo = interval.lo_exclusive;
            s.hi = interval.hi_inclusive;
            const auto& cells = kind == ShellKind::A ? state_.a_shells : state_.b_shells;
            if (n < cells.size()) {
                s.count = cells[n].count;
                s.recip_sum = cells[n].recip.value();
            }
            s.complete = interval.hi_inclusive <= x_limit;
            s.above_M = M.has_value() && interval.lo_exclusive > *M;
            if (n > N) {
                s.count_bound = shell_count_lower_bound(params_, constants, kind, n);
                s.recip_bound = shell_recip_lower_bound(params_, constants, kind, n);
                if (s.complete && s.above_M) {
                    s.count_ok = static_cast<double>(s.count) >= *s.count_bound ? Verdict::Holds : Verdict::Violated;
                    s.recip_ok = s.recip_sum >= *s.recip_bound ? Verdict::Holds : Verdict::Violated;
                }
            }
            out.push_back(std::move(s));
        }
        if (!any) break;
    }
    return out;
}

AccumulateResult accumulate(const SectorParams& params, const BoundConstants& constants,
                            const SieveConfig& config) {
    SectorAccumulator acc(params);
    sieve_stream(config, [&](const Segment& seg) { acc.consume(seg); });
    return AccumulateResult{acc.shells(config.limit, constants, constants.M), acc.sums(),
                            acc.decades(config.limit)};
}

}  // namespace sector_primes
