#include "sector_primes/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sector_primes/compensated_sum.hpp"
#include "sector_primes/errors.hpp"

namespace sector_primes {

namespace {

constexpr double kPi = std::numbers::pi;

// X = 2n pi - alpha for A shells, (2n+1) pi - alpha for B shells.
double centre_offset(const SectorParams& params, ShellKind kind, std::uint64_t n) {
    const double multiple = 2.0 * static_cast<double>(n) + (kind == ShellKind::B ? 1.0 : 0.0);
    return multiple * kPi - params.alpha;
}

double recip_numerator(const BoundConstants& constants, ShellKind kind, std::uint64_t n) {
    const double multiple = 2.0 * static_cast<double>(n) + (kind == ShellKind::B ? 1.0 : 0.0);
    return constants.c * multiple - constants.d;
}

double recip_denominator(const SectorParams& params, ShellKind kind, std::uint64_t n) {
    const double x = centre_offset(params, kind, n);
    return (x - params.beta) * (x + params.beta);
}

// y e^{X/y} [e^{b}/(X+beta) - e^{-b}/(X-beta)], b = beta/2y. Equal to the
// two-exponential form; factoring e^{X/y} keeps overflow from producing inf - inf.
double count_bound_raw(const SectorParams& params, ShellKind kind, std::uint64_t n) {
    const double x = centre_offset(params, kind, n);
    const double b = params.beta / (2.0 * params.y);
    const double bracket = std::exp(b) / (x + params.beta) - std::exp(-b) / (x - params.beta);
    if (bracket == 0.0) return 0.0;
    return params.y * std::exp(x / params.y) * bracket;
}

bool bounds_positive(const SectorParams& params, const BoundConstants& constants, std::uint64_t n) {
    for (const ShellKind kind : {ShellKind::A, ShellKind::B}) {
        const double x = centre_offset(params, kind, n);
        if (!(x > params.beta)) return false;
        if (!(recip_numerator(constants, kind, n) > 0.0)) return false;
        if (!(recip_denominator(params, kind, n) > 0.0)) return false;
        if (!(count_bound_raw(params, kind, n) > 0.0)) return false;
    }
    return true;
}

std::string n_context(std::uint64_t n, std::uint64_t N) {
    return "n=" + std::to_string(n) + " (N=" + std::to_string(N) + ")";
}

}  // namespace

BoundConstants constants_of(const SectorParams& params) {
    const double e1 = std::exp(-params.beta / (2.0 * params.y));
    const double ratio_m1 = std::expm1(-params.beta / params.y);  // e^{-beta/y} - 1
    const double diff = -e1 * ratio_m1;                         // e1 - e3
    const double sum = e1 * (2.0 + ratio_m1);                   // e1 + e3
    BoundConstants out;
    out.c = params.y * kPi * diff;
    out.d = params.y * params.alpha * diff + params.y * params.beta * sum;
    if (!(out.c > 0.0)) throw DomainError("constants_of: c underflowed to zero; y too large for double");
    return out;
}

std::uint64_t positivity_threshold(const SectorParams& params) {
    const BoundConstants constants = constants_of(params);
    // Analytic start: positivity <=> 2n pi - alpha > beta coth(beta/2y).
    const double coth = 1.0 / std::tanh(params.beta / (2.0 * params.y));
    double estimate = std::floor((params.beta * coth + params.alpha) / (2.0 * kPi));
    auto n0 = static_cast<std::uint64_t>(std::max(0.0, estimate));
    while (!bounds_positive(params, constants, n0 + 1)) ++n0;
    while (n0 > 0 && bounds_positive(params, constants, n0)) --n0;
    return n0;
}

std::uint64_t find_N(const SectorParams& params, double M) {
    if (!(M > 0.0)) throw DomainError("find_N: M must be > 0, got " + std::to_string(M));
    // exp((2(N+1)pi - beta - alpha)/y) > M  <=>  2(N+1)pi > y ln M + beta + alpha.
    const double target = params.y * std::log(M) + params.beta + params.alpha;
    double estimate = std::ceil(target / (2.0 * kPi)) - 1.0;
    auto n = static_cast<std::uint64_t>(std::max(0.0, estimate));
    auto lower_endpoint = [&](std::uint64_t idx) {
        return std::exp((2.0 * static_cast<double>(idx) * kPi - params.beta - params.alpha) / params.y);
    };
    while (!(lower_endpoint(n + 1) > M)) ++n;
    while (n > 0 && lower_endpoint(n) > M) --n;
    return std::max(n, positivity_threshold(params));
}

std::uint64_t effective_N(const SectorParams& params, const BoundConstants& constants) {
    return constants.N ? *constants.N : positivity_threshold(params);
}

double shell_count_lower_bound(const SectorParams& params, const BoundConstants& constants,
                               ShellKind kind, std::uint64_t n) {
    const std::uint64_t N = effective_N(params, constants);
    if (n <= N)
        throw PreconditionError("shell_count_lower_bound requires n > N: " + n_context(n, N));
    return count_bound_raw(params, kind, n);
}

double shell_count_lower_bound_unsimplified(const SectorParams& params, ShellKind kind,
                                            std::uint64_t n) {
    const double x = centre_offset(params, kind, n);
    const double b = params.beta / (2.0 * params.y);
    const double log_hi = (x + params.beta) / params.y;
    const double log_lo = (x - params.beta) / params.y;
    return std::exp(-b) * std::exp(log_hi) / log_hi - std::exp(b) * std::exp(log_lo) / log_lo;
}

double shell_recip_lower_bound(const SectorParams& params, const BoundConstants& constants,
                               ShellKind kind, std::uint64_t n) {
    const std::uint64_t N = effective_N(params, constants);
    if (n <= N)
        throw PreconditionError("shell_recip_lower_bound requires n > N: " + n_context(n, N));
    const double numerator = recip_numerator(constants, kind, n);
    const double denominator = recip_denominator(params, kind, n);
    if (numerator < 0.0)
        throw PreconditionError(std::string("shell_recip_lower_bound requires ") +
                                (kind == ShellKind::A ? "2cn >= d" : "c(2n+1) >= d") + ": " +
                                n_context(n, N));
    if (!(denominator > 0.0))
        throw PreconditionError("shell_recip_lower_bound requires a positive denominator "
                                "(X - alpha)^2 > beta^2: " + n_context(n, N));
    return numerator / denominator;
}

double shell_recip_two_fraction(const SectorParams& params, ShellKind kind, std::uint64_t n) {
    // The two fractions nearly cancel for large y; the 64-bit significand of
    // long double keeps the difference good to ~1e-15 where double loses ~1e-12.
    using ld = long double;
    const ld x = centre_offset(params, kind, n);
    const ld y = params.y;
    const ld beta = params.beta;
    const ld e1 = std::exp(-beta / (2 * y));
    const ld e3 = std::exp(-3 * beta / (2 * y));
    return static_cast<double>(y * e1 / (x + beta) - y * e3 / (x - beta));
}

double comparison_series_partial_sum(const SectorParams& params, const BoundConstants& constants,
                                     ShellKind kind, std::uint64_t from_n, std::uint64_t to_n) {
    const std::uint64_t N = effective_N(params, constants);
    if (from_n <= N)
        throw PreconditionError("comparison_series_partial_sum requires from_n > N: " +
                                n_context(from_n, N));
    NeumaierSum sum;
    for (std::uint64_t n = from_n; n <= to_n; ++n) sum += shell_recip_lower_bound(params, constants, kind, n);
    return sum.value();
}

std::optional<std::uint64_t> series_crossing(const SectorParams& params,
                                             const BoundConstants& constants, ShellKind kind,
                                             double target, std::uint64_t max_terms) {
    const std::uint64_t N = effective_N(params, constants);
    NeumaierSum sum;
    for (std::uint64_t n = N + 1; n <= N + max_terms; ++n) {
        sum += shell_recip_lower_bound(params, constants, kind, n);
        if (sum.value() > target) return n;
    }
    return std::nullopt;
}

}  // namespace sector_primes
