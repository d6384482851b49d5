#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace sector_primes {

/// Problem instance (y, alpha, K) and the derived half-width beta = arccos K.
struct SectorParams {
    double y = 10.0;
    double alpha = 0.0;
    double K = 0.5;
    double beta = 0.0;

    /// Validates y > 0, 0 <= alpha < 2pi, 0 < K < 1 and derives beta.
    /// Throws DomainError naming the offending parameter and its valid range.
    static SectorParams make(double y, double alpha, double K);

    friend bool operator==(const SectorParams&, const SectorParams&) = default;
};

enum class Sector { Plus, Minus, Neither };

/// A: raw phase within beta of 2n*pi. B: within beta of (2n+1)*pi.
enum class ShellKind { A, B };

struct ShellId {
    ShellKind kind = ShellKind::A;
    std::uint64_t n = 0;

    friend bool operator==(const ShellId&, const ShellId&) = default;
};

struct PhaseResult {
    std::uint64_t p = 0;
    double theta = 0.0;      // (y ln p + alpha) mod 2pi, in [0, 2pi)
    double cos_theta = 0.0;
    Sector sector = Sector::Neither;
    std::optional<ShellId> shell;
    bool boundary_flag = false;  // classification was settled in 256-bit arithmetic
};

/// Shell as an explicit interval of reals: lo_exclusive < p <= hi_inclusive.
struct ShellInterval {
    ShellKind kind = ShellKind::A;
    std::uint64_t n = 0;
    double lo_exclusive = 0.0;
    double hi_inclusive = 0.0;

    bool contains(std::uint64_t p) const {
        const auto x = static_cast<double>(p);
        return lo_exclusive < x && x <= hi_inclusive;
    }
};

/// Width of the guard band around |cos theta| = K (and |r| = beta) inside
/// which classification is recomputed in extended precision.
inline constexpr double kBoundaryGuard = 0x1p-40;

/// Mantissa bits used for boundary reclassification.
inline constexpr long kExtendedPrecisionBits = 256;

/// Phase, sector and shell of p. Throws DomainError for p < 2.
PhaseResult phase_of(const SectorParams& params, std::uint64_t p);

ShellInterval shell_interval(const SectorParams& params, ShellKind kind, std::uint64_t n);

/// Same shell as phase_of(params, p).shell. Throws DomainError for p < 2.
std::optional<ShellId> shell_index_of(const SectorParams& params, std::uint64_t p);

std::string_view to_string(Sector sector);
std::string_view to_string(ShellKind kind);

}  // namespace sector_primes
