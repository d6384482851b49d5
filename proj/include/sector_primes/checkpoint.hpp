#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sector_primes/aggregate.hpp"
#include "sector_primes/envelope.hpp"
#include "sector_primes/phase.hpp"
#include "sector_primes/sieve.hpp"

namespace sector_primes {

/// State of a run at a segment boundary.
struct RunState {
    AccumulatorState accumulator;
    EnvelopeState envelope;

    friend bool operator==(const RunState&, const RunState&) = default;
};

using ParamsDigest = std::array<std::uint8_t, 32>;

/// Binary resume token:
///   "SPRM" | version u16 | SHA-256 params digest (32 bytes) | segment index u64 | payload
/// All integers little-endian, doubles as their IEEE-754 bit patterns. The
/// segment index is the first segment the resumed run must sieve.
struct ResumeToken {
    static constexpr std::array<char, 4> kMagic{'S', 'P', 'R', 'M'};
    static constexpr std::uint16_t kVersion = 1;

    ParamsDigest params_digest{};
    std::uint64_t segment_index = 0;
    std::uint64_t segment_span = 0;
    RunState state;
};

/// SHA-256 over the bit patterns of (y, alpha, K).
ParamsDigest params_digest(const SectorParams& params);

/// Token for `state`, which must sit at a segment boundary of the grid
/// defined by `segment_span`.
ResumeToken checkpoint(const SectorParams& params, std::uint64_t segment_span, const RunState& state);

std::vector<std::uint8_t> encode(const ResumeToken& token);

/// Throws ResumeError(Corrupt) on malformed input.
ResumeToken decode(std::span<const std::uint8_t> bytes);

/// Validates the token against the run it is about to continue and returns
/// its state. Throws ResumeError(ParamMismatch) for different (y, alpha, K) and
/// ResumeError(SegmentAlignment) for a different segment grid or a token that
/// already covers primes beyond config.limit.
RunState resume(const ResumeToken& token, const SectorParams& params, const SieveConfig& config);

/// File helpers; write is atomic (temp file + rename). I/O failures throw
/// std::filesystem::filesystem_error.
void write_token(const std::filesystem::path& path, const ResumeToken& token);
ResumeToken read_token(const std::filesystem::path& path);

}  // namespace sector_primes
