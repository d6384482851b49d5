#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sector_primes/aggregate.hpp"
#include "sector_primes/bounds.hpp"
#include "sector_primes/envelope.hpp"
#include "sector_primes/lemma.hpp"
#include "sector_primes/phase.hpp"
#include "sector_primes/sieve.hpp"

namespace sector_primes {

inline constexpr int kSchemaVersion = 1;

/// Growth of the sector sums over (from_x, to_x] next to the sum of the
/// reciprocal lower bounds of the shells lying entirely inside that range.
struct DecadeGrowth {
    std::uint64_t from_x = 0;
    std::uint64_t to_x = 0;
    double plus_increment = 0.0;
    double minus_increment = 0.0;
    double predicted_plus = 0.0;   // A shells with n > N
    double predicted_minus = 0.0;  // B shells with n > N
    std::uint64_t shells_plus = 0;
    std::uint64_t shells_minus = 0;

    friend bool operator==(const DecadeGrowth&, const DecadeGrowth&) = default;
};

struct LemmaFindings {
    RaySpec ray;
    std::uint64_t limit = 0;
    std::vector<RayHit> hits;
    std::vector<TripleCertificate> certificates;
    std::uint64_t certificates_failed = 0;  // exact_inequality_holds == false; never expected

    friend bool operator==(const LemmaFindings&, const LemmaFindings&) = default;
};

/// Wall-clock milliseconds per phase. Excluded from determinism comparisons.
struct Timings {
    double sieve_ms = 0.0;
    double finalize_ms = 0.0;
    double lemma_ms = 0.0;
    double total_ms = 0.0;

    friend bool operator==(const Timings&, const Timings&) = default;
};

struct RunReport {
    SectorParams params;
    SieveConfig config;
    BoundConstants constants;
    EnvelopeReport envelope;
    std::vector<ShellStats> shells;
    SectorSums sums;
    std::vector<DecadeRow> decades;
    std::vector<DecadeGrowth> growth;
    std::optional<LemmaFindings> lemma_findings;
    std::uint64_t bound_violations = 0;  // violated verdicts on complete, above-M shells
    bool red_flag = false;               // any violation, or exception budget exceeded
    Timings timings;
    std::string version;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Shortest decimal that round-trips to the same double; '.' separator,
/// independent of locale.
std::string format_double(double value);

/// Exact CSV header of the per-shell table.
inline constexpr const char* kShellCsvHeader =
    "kind,n,lo,hi,complete,above_M,count,count_bound,recip_sum,recip_bound,count_ok,recip_ok";

std::string shells_csv(const std::vector<ShellStats>& shells);
std::string decades_csv(const std::vector<DecadeRow>& decades, const std::vector<DecadeGrowth>& growth);
std::string envelope_csv(const EnvelopeReport& envelope);
std::string lemma_csv(const LemmaFindings& findings);

std::string shells_table(const std::vector<ShellStats>& shells);
std::string sums_table(const RunReport& report);
std::string envelope_table(const EnvelopeReport& envelope);
std::string lemma_table(const LemmaFindings& findings);

/// JSON document with a top-level "schema_version". `with_timings` = false
/// drops the timings block for determinism comparisons.
nlohmann::json to_json(const RunReport& report, bool with_timings = true);
RunReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EnvelopeReport& envelope);
nlohmann::json to_json(const LemmaFindings& findings);

}  // namespace sector_primes
