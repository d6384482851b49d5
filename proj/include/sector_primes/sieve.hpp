#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sector_primes {

/// Default bit-buffer size per segment; 256 KiB fits typical L2 caches.
inline constexpr std::uint64_t kDefaultSegmentBytes = 256 * 1024;

/// Each byte of the odd-only bit buffer covers 16 consecutive integers.
inline constexpr std::uint64_t kIntegersPerByte = 16;

struct SieveConfig {
    std::uint64_t limit = 100'000'000;  // inclusive upper bound on emitted primes
    std::uint64_t segment_size = kDefaultSegmentBytes;  // bytes of bit buffer per segment
    unsigned worker_count = 1;

    /// Throws ConfigError if limit < 2, segment_size < 2 or worker_count == 0.
    void validate() const;

    /// Integers covered by one segment. Segment i spans [i*span, (i+1)*span - 1].
    std::uint64_t segment_span() const { return segment_size * kIntegersPerByte; }

    std::uint64_t segment_count() const { return limit / segment_span() + 1; }

    /// Index of the segment containing x.
    std::uint64_t segment_of(std::uint64_t x) const { return x / segment_span(); }

    friend bool operator==(const SieveConfig&, const SieveConfig&) = default;
};

/// Primes of one segment, clipped to [2, limit].
struct Segment {
    std::uint64_t index = 0;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::vector<std::uint64_t> primes;  // strictly increasing, lo <= p <= hi
};

using SegmentConsumer = std::function<void(const Segment&)>;

/// Streams every prime <= config.limit to `consumer`, one call per segment in
/// ascending order, starting at segment `first_segment`. Segments are sieved
/// on config.worker_count threads; the consumer always runs on the calling
/// thread. Exceptions thrown by the consumer stop the workers and propagate.
void sieve_stream(const SieveConfig& config, const SegmentConsumer& consumer,
                  std::uint64_t first_segment = 0);

/// Exact pi(x). Throws OutOfRangeError if x > config.limit.
std::uint64_t prime_count(const SieveConfig& config, std::uint64_t x);

/// All primes <= limit in one vector (single-threaded convenience).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Integer square root, floor(sqrt(n)) computed exactly.
std::uint64_t isqrt(std::uint64_t n);

}  // namespace sector_primes
