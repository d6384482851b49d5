#include "sector_primes/lemma.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "mpfr_value.hpp"
#include "sector_primes/double_double.hpp"
#include "sector_primes/errors.hpp"

namespace sector_primes {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

mpz_class power(std::uint64_t base, std::uint64_t exp) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return out;
}

}  // namespace

RaySpec RaySpec::make(double y, double gamma, double tolerance) {
    if (!(std::isfinite(y) && y > 0.0)) throw DomainError("y must be a finite real > 0");
    if (!(gamma >= 0.0 && gamma <= dd::kTwoPi.hi)) throw DomainError("gamma must lie in [0, 2pi)");
    if (!(tolerance > 0.0 && tolerance <= dd::kPi.hi))
        throw DomainError("tolerance must lie in (0, pi]");
    return RaySpec{y, gamma, tolerance};
}

std::vector<RayHit> scan_ray(const RaySpec& spec, const SieveConfig& config) {
    std::vector<RayHit> hits;
    sieve_stream(config, [&](const Segment& seg) {
        for (const std::uint64_t p : seg.primes) {
            const DoubleDouble offset = dd::sub(dd::mul(dd::log(p), spec.y), DoubleDouble{spec.gamma});
            const double turns = std::nearbyint(offset.hi / dd::kTwoPi.hi);
            const DoubleDouble r = dd::sub(offset, dd::mul(dd::kTwoPi, turns));
            const double distance = std::abs(r.to_double());
            if (distance <= spec.tolerance)
                hits.push_back(RayHit{p, static_cast<std::int64_t>(turns), distance});
        }
    });
    std::stable_sort(hits.begin(), hits.end(), [](const RayHit& a, const RayHit& b) {
        return a.phase_distance < b.phase_distance;
    });
    return hits;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (const std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are sufficient for every n < 2^64.
    for (const std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

TripleCertificate check_triple(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3, std::uint64_t h,
                               std::uint64_t k) {
    if (!(p1 < p2 && p2 < p3)) throw ValidationError("check_triple requires p1 < p2 < p3");
    for (const std::uint64_t p : {p1, p2, p3})
        if (!is_prime(p)) throw ValidationError("check_triple: " + std::to_string(p) + " is not prime");
    if (h == 0 || h >= k) throw ValidationError("check_triple requires 1 <= h < k");
    if (static_cast<double>(k) * std::log(static_cast<double>(p2)) > kExponentLogBudget ||
        static_cast<double>(h) * std::log(static_cast<double>(p3)) > kExponentLogBudget)
        throw ValidationError("check_triple: exponents exceed the exact-arithmetic budget");

    TripleCertificate cert{p1, p2, p3, h, k, 0.0, false, {}, {}};
    const mpz_class lhs = power(p1, k) * power(p3, h);
    const mpz_class rhs = power(p1, h) * power(p2, k);
    cert.exact_inequality_holds = lhs != rhs;
    cert.lhs_digits = lhs.get_str();
    cert.rhs_digits = rhs.get_str();

    using detail::MpfrValue;
    constexpr mpfr_prec_t prec = 256;
    MpfrValue l1(prec), l2(prec), l3(prec), a(prec), b(prec);
    l1.set_uint(p1);
    l2.set_uint(p2);
    l3.set_uint(p3);
    mpfr_log(l1.get(), l1.get(), MPFR_RNDN);
    mpfr_log(l2.get(), l2.get(), MPFR_RNDN);
    mpfr_log(l3.get(), l3.get(), MPFR_RNDN);
    mpfr_sub(a.get(), l3.get(), l1.get(), MPFR_RNDN);
    mpfr_mul_ui(a.get(), a.get(), static_cast<unsigned long>(h), MPFR_RNDN);
    mpfr_sub(b.get(), l2.get(), l1.get(), MPFR_RNDN);
    mpfr_mul_ui(b.get(), b.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_sub(a.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_abs(a.get(), a.get(), MPFR_RNDN);
    cert.residual = a.to_double();
    return cert;
}

std::pair<std::uint64_t, std::uint64_t> best_rational_approximation(double x, std::uint64_t max_denominator) {
    if (max_denominator == 0) throw DomainError("max_denominator must be >= 1");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("best_rational_approximation needs finite x > 0");

    // Convergents p/q; (p0, q0) is the one before (p1, q1).
    std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rest = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_real = std::floor(rest);
        if (a_real > 1e18) break;
        const auto a = static_cast<std::uint64_t>(a_real);
        const std::uint64_t q = a * q1 + q0;
        if (q > max_denominator) {
            // Largest admissible semiconvergent, compared against the last convergent.
            const std::uint64_t t = (max_denominator - q0) / q1;
            const std::uint64_t ps = t * p1 + p0;
            const std::uint64_t qs = t * q1 + q0;
            if (t > 0 && std::abs(x - static_cast<double>(ps) / static_cast<double>(qs)) <
                             std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)))
                return {qs, ps};
            return {q1, p1};
        }
        const std::uint64_t p = a * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p;
        q1 = q;
        const double frac = rest - a_real;
        if (frac <= 1e-15 * rest) break;
        rest = 1.0 / frac;
    }
    return {q1, p1};
}

std::pair<std::uint64_t, std::uint64_t> rational_exponent_guess(std::uint64_t p1, std::uint64_t p2,
                                                                std::uint64_t p3,
                                                                std::uint64_t max_denominator) {
    if (!(p1 >= 1 && p1 < p2 && p2 < p3)) throw DomainError("rational_exponent_guess requires 1 <= p1 < p2 < p3");
    const DoubleDouble l1 = dd::log(p1);
    const DoubleDouble num = dd::sub(dd::log(p3), l1);
    const DoubleDouble den = dd::sub(dd::log(p2), l1);
    return best_rational_approximation(num.to_double() / den.to_double(), max_denominator);
}

}  // namespace sector_primes
