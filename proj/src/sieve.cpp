#include "sector_primes/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <new>
#include <string>
#include <thread>

#include "sector_primes/errors.hpp"

namespace sector_primes {

namespace {

constexpr std::uint64_t kMaxSegmentBytes = std::numeric_limits<std::uint64_t>::max() / kIntegersPerByte;

// Odd primes <= bound via a plain odd-only byte sieve.
std::vector<std::uint32_t> odd_base_primes(std::uint64_t bound) {
    std::vector<std::uint32_t> out;
    if (bound < 3) return out;
    const std::uint64_t n = (bound - 1) / 2;  // index i <-> 2i+1, i in [1, n]
    std::vector<std::uint8_t> composite(n + 1, 0);
    for (std::uint64_t i = 1; i <= n; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        out.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t j = (p * p - 1) / 2; j <= n; j += p) composite[j] = 1;
    }
    return out;
}

// Sieves one segment into a reusable odd-only bit buffer (bit j <-> base + 2j + 1,
// set bit = composite).
class SegmentSieve {
public:
    SegmentSieve(const SieveConfig& config, const std::vector<std::uint32_t>& base)
        : config_(config), base_(base) {
        try {
            words_.resize((config.segment_size * 8 + 63) / 64);
        } catch (const std::bad_alloc&) {
            throw ConfigError("cannot allocate sieve segment buffer for segment_size=" +
                              std::to_string(config.segment_size));
        } catch (const std::length_error&) {
            throw ConfigError("cannot allocate sieve segment buffer for segment_size=" +
                              std::to_string(config.segment_size));
        }
    }

    Segment primes(std::uint64_t index) {
        Segment seg;
        const std::uint64_t nbits = sieve(index, seg);
        if (seg.lo <= 2 && seg.hi >= 2) seg.primes.push_back(2);
        const std::uint64_t base = index * config_.segment_span();
        for_each_prime_bit(nbits, [&](std::uint64_t j) { seg.primes.push_back(base + 2 * j + 1); });
        return seg;
    }

    std::uint64_t count(std::uint64_t index, std::uint64_t x) {
        Segment bounds;
        const std::uint64_t nbits = sieve(index, bounds, x);
        std::uint64_t total = (bounds.lo <= 2 && bounds.hi >= 2) ? 1 : 0;
        const std::uint64_t full = nbits / 64;
        for (std::uint64_t w = 0; w < full; ++w) total += std::popcount(~words_[w]);
        if (const std::uint64_t rest = nbits % 64; rest != 0)
            total += std::popcount(~words_[full] & ((std::uint64_t{1} << rest) - 1));
        return total;
    }

private:
    // Returns the number of valid bits; fills seg.index/lo/hi.
    std::uint64_t sieve(std::uint64_t index, Segment& seg,
                        std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
        const std::uint64_t span = config_.segment_span();
        const std::uint64_t base = index * span;
        const std::uint64_t top = std::min({config_.limit, cap, base + (span - 1)});
        seg.index = index;
        seg.lo = std::max<std::uint64_t>(base, 2);
        seg.hi = top;
        if (top < base + 1) return 0;
        const std::uint64_t nbits = (top - base - 1) / 2 + 1;
        const std::uint64_t nwords = (nbits + 63) / 64;
        std::fill_n(words_.begin(), nwords, std::uint64_t{0});
        if (base == 0) words_[0] |= 1;  // 1 is not prime

        for (const std::uint32_t q32 : base_) {
            const std::uint64_t q = q32;
            if (q * q > top) break;
            std::uint64_t first = std::max(q * q, (base + 1 + q - 1) / q * q);
            if ((first & 1) == 0) first += q;
            for (std::uint64_t j = (first - base - 1) / 2; j < nbits; j += q)
                words_[j >> 6] |= std::uint64_t{1} << (j & 63);
        }
        return nbits;
    }

    template <typename Fn>
    void for_each_prime_bit(std::uint64_t nbits, Fn&& fn) const {
        const std::uint64_t nwords = (nbits + 63) / 64;
        for (std::uint64_t w = 0; w < nwords; ++w) {
            std::uint64_t live = ~words_[w];
            if (w + 1 == nwords && nbits % 64 != 0) live &= (std::uint64_t{1} << (nbits % 64)) - 1;
            while (live != 0) {
                fn(w * 64 + static_cast<std::uint64_t>(std::countr_zero(live)));
                live &= live - 1;
            }
        }
    }

    const SieveConfig& config_;
    const std::vector<std::uint32_t>& base_;
    std::vector<std::uint64_t> words_;
};

// Runs make(sieve, i) for i in [first, count) on worker threads and hands the
// results to deliver() on the calling thread in ascending index order.
template <typename Result, typename Make, typename Deliver>
void run_ordered(const SieveConfig& config, const std::vector<std::uint32_t>& base,
                 std::uint64_t first, std::uint64_t count, Make make, Deliver deliver) {
    if (first >= count) return;
    const std::uint64_t jobs = count - first;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(config.worker_count, jobs));

    if (workers <= 1) {
        SegmentSieve sieve(config, base);
        for (std::uint64_t i = first; i < count; ++i) deliver(make(sieve, i));
        return;
    }

    std::vector<SegmentSieve> sieves;
    sieves.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) sieves.emplace_back(config, base);

    const std::uint64_t window = 2 * static_cast<std::uint64_t>(workers);
    std::mutex mu;
    std::condition_variable ready_cv;
    std::condition_variable space_cv;
    std::map<std::uint64_t, Result> ready;
    std::uint64_t next_deliver = first;
    std::atomic<std::uint64_t> next_claim{first};
    bool stop = false;
    std::exception_ptr worker_error;

    auto work = [&](SegmentSieve& sieve) {
        for (;;) {
            const std::uint64_t i = next_claim.fetch_add(1);
            if (i >= count) return;
            {
                std::unique_lock lock(mu);
                space_cv.wait(lock, [&] { return stop || i < next_deliver + window; });
                if (stop) return;
            }
            try {
                Result r = make(sieve, i);
                std::lock_guard lock(mu);
                ready.emplace(i, std::move(r));
            } catch (...) {
                std::lock_guard lock(mu);
                if (!worker_error) worker_error = std::current_exception();
                stop = true;
                space_cv.notify_all();
            }
            ready_cv.notify_one();
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (auto& sieve : sieves) threads.emplace_back(work, std::ref(sieve));

    std::exception_ptr consumer_error;
    while (next_deliver < count) {
        Result r;
        {
            std::unique_lock lock(mu);
            ready_cv.wait(lock, [&] { return worker_error || ready.contains(next_deliver); });
            if (worker_error) break;
            auto node = ready.extract(next_deliver);
            r = std::move(node.mapped());
        }
        try {
            deliver(std::move(r));
        } catch (...) {
            consumer_error = std::current_exception();
        }
        {
            std::lock_guard lock(mu);
            ++next_deliver;
            if (consumer_error) stop = true;
        }
        space_cv.notify_all();
        if (consumer_error) break;
    }
    {
        std::lock_guard lock(mu);
        stop = true;
    }
    space_cv.notify_all();
    for (auto& t : threads) t.join();
    if (consumer_error) std::rethrow_exception(consumer_error);
    if (worker_error) std::rethrow_exception(worker_error);
}

}  // namespace

void SieveConfig::validate() const {
    if (limit < 2) throw ConfigError("limit must be >= 2, got " + std::to_string(limit));
    if (segment_size < 2)
        throw ConfigError("segment_size must be >= 2, got " + std::to_string(segment_size));
    if (segment_size > kMaxSegmentBytes)
        throw ConfigError("segment_size=" + std::to_string(segment_size) + " is too large");
    if (worker_count == 0) throw ConfigError("worker_count must be positive");
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (r > UINT32_MAX || r * r > n)) --r;
    while (r < UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

void sieve_stream(const SieveConfig& config, const SegmentConsumer& consumer,
                  std::uint64_t first_segment) {
    config.validate();
    const auto base = odd_base_primes(isqrt(config.limit));
    run_ordered<Segment>(
        config, base, first_segment, config.segment_count(),
        [](SegmentSieve& sieve, std::uint64_t i) { return sieve.primes(i); },
        [&](Segment&& seg) { consumer(seg); });
}

std::uint64_t prime_count(const SieveConfig& config, std::uint64_t x) {
    config.validate();
    if (x > config.limit)
        throw OutOfRangeError("prime_count: x=" + std::to_string(x) + " exceeds limit=" +
                              std::to_string(config.limit));
    if (x < 2) return 0;
    SieveConfig capped = config;
    capped.limit = x;
    const auto base = odd_base_primes(isqrt(x));
    std::uint64_t total = 0;
    run_ordered<std::uint64_t>(
        capped, base, 0, capped.segment_count(),
        [x](SegmentSieve& sieve, std::uint64_t i) { return sieve.count(i, x); },
        [&](std::uint64_t n) { total += n; });
    return total;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    SieveConfig config;
    config.limit = limit;
    config.segment_size = std::min<std::uint64_t>(kDefaultSegmentBytes, limit / kIntegersPerByte + 2);
    sieve_stream(config, [&](const Segment& seg) {
        out.insert(out.end(), seg.primes.begin(), seg.primes.end());
    });
    return out;
}

}  // namespace sector_primes
