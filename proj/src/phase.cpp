#include "sector_primes/phase.hpp"

#include <cmath>
#include <string>

#include "mpfr_value.hpp"
#include "sector_primes/double_double.hpp"
#include "sector_primes/errors.hpp"

namespace sector_primes {

namespace {

using detail::MpfrValue;

ShellId shell_from_multiple(double k) {
    const auto m = static_cast<std::uint64_t>(k);
    return (m % 2 == 0) ? ShellId{ShellKind::A, m / 2} : ShellId{ShellKind::B, (m - 1) / 2};
}

void classify_sector(PhaseResult& out, double K) {
    if (out.cos_theta > K)
        out.sector = Sector::Plus;
    else if (out.cos_theta < -K)
        out.sector = Sector::Minus;
    else
        out.sector = Sector::Neither;
}

// Settles sector and shell in 256-bit arithmetic. Membership tests compare
// exact-precision quantities: cos(raw) against K, and the offset r of the raw
// phase from the nearest multiple of pi against beta = acos K.
void classify_precise(const SectorParams& params, PhaseResult& out) {
    constexpr mpfr_prec_t prec = kExtendedPrecisionBits;
    MpfrValue raw(prec), tmp(prec), pi(prec), k(prec), r(prec), beta(prec), K(prec, params.K);

    raw.set_uint(out.p);
    mpfr_log(raw.get(), raw.get(), MPFR_RNDN);
    mpfr_mul_d(raw.get(), raw.get(), params.y, MPFR_RNDN);
    mpfr_add_d(raw.get(), raw.get(), params.alpha, MPFR_RNDN);

    mpfr_const_pi(pi.get(), MPFR_RNDN);
    mpfr_div(k.get(), raw.get(), pi.get(), MPFR_RNDN);
    mpfr_round(k.get(), k.get());
    mpfr_mul(tmp.get(), k.get(), pi.get(), MPFR_RNDN);
    mpfr_sub(r.get(), raw.get(), tmp.get(), MPFR_RNDN);

    mpfr_acos(beta.get(), K.get(), MPFR_RNDN);
    mpfr_neg(tmp.get(), beta.get(), MPFR_RNDN);
    if (mpfr_cmp(r.get(), tmp.get()) > 0 && mpfr_cmp(r.get(), beta.get()) <= 0)
        out.shell = shell_from_multiple(k.to_double());
    else
        out.shell.reset();

    mpfr_cos(tmp.get(), raw.get(), MPFR_RNDN);
    if (mpfr_cmp(tmp.get(), K.get()) > 0)
        out.sector = Sector::Plus;
    else if (mpfr_cmpabs(tmp.get(), K.get()) > 0 && mpfr_sgn(tmp.get()) < 0)
        out.sector = Sector::Minus;
    else
        out.sector = Sector::Neither;
    out.cos_theta = tmp.to_double();

    mpfr_mul_2ui(pi.get(), pi.get(), 1, MPFR_RNDN);
    mpfr_fmod(tmp.get(), raw.get(), pi.get(), MPFR_RNDN);
    out.theta = tmp.to_double();
    if (out.theta >= dd::kTwoPi.hi) out.theta = 0.0;
}

}  // namespace

SectorParams SectorParams::make(double y, double alpha, double K) {
    if (!(std::isfinite(y) && y > 0.0))
        throw DomainError("y must be a finite real > 0, got " + std::to_string(y));
    if (!(alpha >= 0.0 && alpha <= dd::kTwoPi.hi))
        throw DomainError("alpha must lie in [0, 2pi), got " + std::to_string(alpha));
    if (!(K > 0.0 && K < 1.0))
        throw DomainError("K must lie in the open interval (0, 1), got " + std::to_string(K));
    return SectorParams{y, alpha, K, std::acos(K)};
}

PhaseResult phase_of(const SectorParams& params, std::uint64_t p) {
    if (p < 2) throw DomainError("phase_of: p must be >= 2, got " + std::to_string(p));

    PhaseResult out;
    out.p = p;

    const DoubleDouble raw = dd::add(dd::mul(dd::log(p), params.y), DoubleDouble{params.alpha});

    // Offset from the nearest multiple of pi decides the shell and the cosine.
    const double k = std::nearbyint(raw.hi / dd::kPi.hi);
    const DoubleDouble r = dd::sub(raw, dd::mul(dd::kPi, k));
    double c = std::cos(r.hi) - std::sin(r.hi) * r.lo;
    if (std::fmod(k, 2.0) != 0.0) c = -c;
    out.cos_theta = c;

    double turns = std::floor(raw.hi / dd::kTwoPi.hi);
    DoubleDouble t = dd::sub(raw, dd::mul(dd::kTwoPi, turns));
    if (t.hi < 0.0) t = dd::add(t, dd::kTwoPi);
    if (!dd::less(t, dd::kTwoPi)) t = dd::sub(t, dd::kTwoPi);
    out.theta = t.to_double();
    if (out.theta >= dd::kTwoPi.hi) out.theta = 0.0;

    out.boundary_flag = std::abs(std::abs(c) - params.K) < kBoundaryGuard ||
                        std::abs(std::abs(r.hi) - params.beta) < kBoundaryGuard;
    if (out.boundary_flag) {
        classify_precise(params, out);
        return out;
    }

    classify_sector(out, params.K);
    if (r.hi > -params.beta && r.hi <= params.beta) out.shell = shell_from_multiple(k);
    return out;
}

ShellInterval shell_interval(const SectorParams& params, ShellKind kind, std::uint64_t n) {
    const double multiple = 2.0 * static_cast<double>(n) + (kind == ShellKind::B ? 1.0 : 0.0);
    const DoubleDouble centre = dd::mul(dd::kPi, multiple);
    const DoubleDouble lo_exp = dd::sub(centre, dd::add(DoubleDouble{params.beta}, DoubleDouble{params.alpha}));
    const DoubleDouble hi_exp = dd::sub(dd::add(centre, DoubleDouble{params.beta}), DoubleDouble{params.alpha});
    auto endpoint = [&](DoubleDouble e) {
        const double scaled = e.to_double() / params.y;
        if (scaled > 700.0 || scaled < -700.0) return std::exp(scaled);
        // Divide in double-double so the endpoint is correctly rounded in practice.
        const double q = e.hi / params.y;
        const DoubleDouble back = dd::two_prod(q, params.y);
        const double rem = ((e.hi - back.hi) - back.lo + e.lo) / params.y;
        return dd::exp(dd::quick_two_sum(q, rem)).to_double();
    };
    return ShellInterval{kind, n, endpoint(lo_exp), endpoint(hi_exp)};
}

std::optional<ShellId> shell_index_of(const SectorParams& params, std::uint64_t p) {
    return phase_of(params, p).shell;
}

std::string_view to_string(Sector sector) {
    switch (sector) {
        case Sector::Plus: return "plus";
        case Sector::Minus: return "minus";
        case Sector::Neither: return "neither";
    }
    return "neither";
}

std::string_view to_string(ShellKind kind) { return kind == ShellKind::A ? "A" : "B"; }

}  // namespace sector_primes
