#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "sector_primes/lemma.hpp"
#include "sector_primes/phase.hpp"
#include "sector_primes/report.hpp"
#include "sector_primes/sieve.hpp"

namespace sector_primes {

struct RunOptions {
    /// Resume from this token when the file exists; the state is written back
    /// every `checkpoint_every` segments and at the end of the run.
    std::optional<std::filesystem::path> checkpoint_path;
    std::uint64_t checkpoint_every = 16;

    /// Also scan a ray and certify triples of its nearest hits.
    std::optional<RaySpec> ray;
    std::size_t certificate_hits = 12;
};

/// Sieve -> phase -> aggregate + envelope, then bounds and verdicts.
RunReport run(const SectorParams& params, const SieveConfig& config, const RunOptions& options = {});

/// Ray scan plus exact certificates for every triple among the nearest
/// `certificate_hits` hits.
LemmaFindings run_lemma(const RaySpec& ray, const SieveConfig& config, std::size_t certificate_hits = 12);

/// Per-decade growth of the sector sums against the reciprocal bounds of
/// the shells (n > N) lying entirely inside each decade.
std::vector<DecadeGrowth> decade_growth(const SectorParams& params, const BoundConstants& constants,
                                        const std::vector<DecadeRow>& decades,
                                        const std::vector<ShellStats>& shells);

std::string_view version();

}  // namespace sector_primes
