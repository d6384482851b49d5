#include "sector_primes/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sector_primes/aggregate.hpp"
#include "sector_primes/bounds.hpp"
#include "sector_primes/checkpoint.hpp"
#include "sector_primes/envelope.hpp"
#include "sector_primes/errors.hpp"

namespace sector_primes {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string_view version() { return SECTOR_PRIMES_VERSION; }

std::vector<DecadeGrowth> decade_growth(const SectorParams& params, const BoundConstants& constants,
                                        const std::vector<DecadeRow>& decades,
                                        const std::vector<ShellStats>& shells) {
    const std::uint64_t N = effective_N(params, constants);
    std::vector<DecadeGrowth> out;
    for (std::size_t i = 1; i < decades.size(); ++i) {
        const DecadeRow& from = decades[i - 1];
        const DecadeRow& to = decades[i];
        DecadeGrowth g;
        g.from_x = from.x;
        g.to_x = to.x;
        g.plus_increment = to.sum_plus - from.sum_plus;
        g.minus_increment = to.sum_minus - from.sum_minus;
        NeumaierSum plus, minus;
        for (const ShellStats& s : shells) {
            if (s.n <= N || !s.recip_bound) continue;
            if (!(s.lo >= static_cast<double>(from.x) && s.hi <= static_cast<double>(to.x))) continue;
            if (s.kind == ShellKind::A) {
                plus += *s.recip_bound;
                ++g.shells_plus;
            } else {
                minus += *s.recip_bound;
                ++g.shells_minus;
            }
        }
        g.predicted_plus = plus.value();
        g.predicted_minus = minus.value();
        out.push_back(g);
    }
    return out;
}

LemmaFindings run_lemma(const RaySpec& ray, const SieveConfig& config, std::size_t certificate_hits) {
    LemmaFindings findings;
    findings.ray = ray;
    findings.limit = config.limit;
    findings.hits = scan_ray(ray, config);

    std::vector<RayHit> nearest(findings.hits.begin(),
                                findings.hits.begin() + static_cast<std::ptrdiff_t>(
                                                            std::min(certificate_hits, findings.hits.size())));
    std::sort(nearest.begin(), nearest.end(), [](const RayHit& a, const RayHit& b) { return a.p < b.p; });
    for (std::size_t i = 0; i < nearest.size(); ++i)
        for (std::size_t j = i + 1; j < nearest.size(); ++j)
            for (std::size_t k = j + 1; k < nearest.size(); ++k) {
                const RayHit& a = nearest[i];
                const RayHit& b = nearest[j];
                const RayHit& c = nearest[k];
                // Exponent gaps from the ray indices when they are usable, else the
                // best rational fit of the log ratio.
                std::uint64_t h = 0, kk = 0;
                if (b.n > a.n && c.n > b.n) {
                    h = static_cast<std::uint64_t>(b.n - a.n);
                    kk = static_cast<std::uint64_t>(c.n - a.n);
                } else {
                    std::tie(h, kk) = rational_exponent_guess(a.p, b.p, c.p, 1000);
                }
                if (h == 0 || h >= kk) continue;
                if (static_cast<double>(kk) * std::log(static_cast<double>(b.p)) > kExponentLogBudget ||
                    static_cast<double>(h) * std::log(static_cast<double>(c.p)) > kExponentLogBudget)
                    continue;
                TripleCertificate cert = check_triple(a.p, b.p, c.p, h, kk);
                if (!cert.exact_inequality_holds) ++findings.certificates_failed;
                findings.certificates.push_back(std::move(cert));
            }
    return findings;
}

RunReport run(const SectorParams& params, const SieveConfig& config, const RunOptions& options) {
    config.validate();
    const auto start = Clock::now();

    SectorAccumulator acc(params);
    EnvelopeTracker envelope(params);
    std::uint64_t first_segment = 0;
    std::uint64_t resumed_hi = 1;

    if (options.checkpoint_path && std::filesystem::exists(*options.checkpoint_path)) {
        const ResumeToken token = read_token(*options.checkpoint_path);
        const RunState state = resume(token, params, config);
        acc.restore(state.accumulator);
        envelope.restore(state.envelope);
        first_segment = token.segment_index;
        resumed_hi = state.accumulator.covered_hi;
    }

    auto save = [&] {
        write_token(*options.checkpoint_path,
                    checkpoint(params, config.segment_span(), RunState{acc.state(), envelope.state()}));
    };

    std::uint64_t since_save = 0;
    sieve_stream(
        config,
        [&](const Segment& seg) {
            if (seg.lo <= resumed_hi) {
                Segment rest{seg.index, resumed_hi + 1, seg.hi, {}};
                for (const std::uint64_t p : seg.primes)
                    if (p > resumed_hi) rest.primes.push_back(p);
                acc.consume(rest);
                envelope.observe(rest);
            } else {
                acc.consume(seg);
                envelope.observe(seg);
            }
            if (options.checkpoint_path && ++since_save >= options.checkpoint_every) {
                save();
                since_save = 0;
            }
        },
        first_segment);
    if (options.checkpoint_path) save();

    RunReport report;
    report.timings.sieve_ms = ms_since(start);
    const auto finalize_start = Clock::now();

    report.params = params;
    report.config = config;
    report.version = std::string(version());
    report.envelope = envelope.finish(config.limit);

    report.constants = constants_of(params);
    report.constants.M = report.envelope.M_found;
    report.constants.N = report.envelope.M_found ? find_N(params, *report.envelope.M_found)
                                                 : positivity_threshold(params);

    report.shells = acc.shells(config.limit, report.constants, report.constants.M);
    report.sums = acc.sums();
    report.decades = acc.decades(config.limit);
    report.growth = decade_growth(params, report.constants, report.decades, report.shells);

    for (const ShellStats& s : report.shells) {
        if (s.count_ok == Verdict::Violated) ++report.bound_violations;
        if (s.recip_ok == Verdict::Violated) ++report.bound_violations;
    }
    report.red_flag = report.bound_violations > 0 || report.sums.a_not_plus > 2 || report.sums.b_not_minus > 2 ||
                      report.sums.boundary_exceptions.size() > 4;
    report.timings.finalize_ms = ms_since(finalize_start);

    if (options.ray) {
        const auto lemma_start = Clock::now();
        report.lemma_findings = run_lemma(*options.ray, config, options.certificate_hits);
        if (report.lemma_findings->certificates_failed > 0) report.red_flag = true;
        report.timings.lemma_ms = ms_since(lemma_start);
    }
    report.timings.total_ms = ms_since(start);
    return report;
}

}  // namespace sector_primes
