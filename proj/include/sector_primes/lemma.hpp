#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sector_primes/sieve.hpp"

namespace sector_primes {

/// The ray y ln p = 2n pi + gamma, widened to a phase band of +-tolerance.
struct RaySpec {
    double y = 1.0;
    double gamma = 0.0;
    double tolerance = 1e-3;

    /// Throws DomainError unless y > 0, 0 <= gamma < 2pi, 0 < tolerance <= pi.
    static RaySpec make(double y, double gamma, double tolerance);

    friend bool operator==(const RaySpec&, const RaySpec&) = default;
};

struct RayHit {
    std::uint64_t p = 0;
    std::int64_t n = 0;             // round((y ln p - gamma) / 2pi)
    double phase_distance = 0.0;    // |y ln p - gamma - 2n pi|

    friend bool operator==(const RayHit&, const RayHit&) = default;
};

/// Every prime <= config.limit within tolerance of the ray, nearest first
/// (ties by p).
std::vector<RayHit> scan_ray(const RaySpec& spec, const SieveConfig& config);

/// Exact check that p1^k p3^h != p1^h p2^k for three primes on a common ray
/// with exponent gaps h = m - l < k = n - l.
struct TripleCertificate {
    std::uint64_t p1 = 0, p2 = 0, p3 = 0;
    std::uint64_t h = 0, k = 0;
    double residual = 0.0;  // |h ln(p3/p1) - k ln(p2/p1)|, 256-bit evaluation
    bool exact_inequality_holds = false;
    std::string lhs_digits;  // decimal p1^k p3^h
    std::string rhs_digits;  // decimal p1^h p2^k

    friend bool operator==(const TripleCertificate&, const TripleCertificate&) = default;
};

/// Budget on k ln p2 (and h ln p3) for the exact comparison.
inline constexpr double kExponentLogBudget = 1e5;

/// Throws ValidationError for non-prime or unordered inputs, h >= k, h == 0,
/// or exponents beyond kExponentLogBudget.
TripleCertificate check_triple(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3, std::uint64_t h,
                               std::uint64_t k);

/// Best rational approximation num/den of x > 0 with den <= max_denominator
/// (continued-fraction convergents plus the final semiconvergent).
/// Returns {den, num}. Throws DomainError if max_denominator == 0 or x <= 0.
std::pair<std::uint64_t, std::uint64_t> best_rational_approximation(double x, std::uint64_t max_denominator);

/// (h, k) with k/h approximating ln(p3/p1) / ln(p2/p1). Requires 1 <= p1 < p2 < p3.
std::pair<std::uint64_t, std::uint64_t> rational_exponent_guess(std::uint64_t p1, std::uint64_t p2,
                                                                std::uint64_t p3,
                                                                std::uint64_t max_denominator);

/// Deterministic Miller-Rabin for 64-bit n.
bool is_prime(std::uint64_t n);

}  // namespace sector_primes
