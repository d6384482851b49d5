#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sector_primes/errors.hpp"
#include "sector_primes/lemma.hpp"

using namespace sector_primes;

namespace {

SieveConfig make(std::uint64_t limit) {
    SieveConfig c;
    c.limit = limit;
    c.segment_size = 16384;
    return c;
}

}  // namespace

TEST_CASE("the ray through 2 at y = 2pi/ln2 holds only 2") {
    const RaySpec spec = RaySpec::make(2.0 * std::numbers::pi / std::numbers::ln2, 0.0, 1e-9);
    const auto hits = scan_ray(spec, make(1'000'000));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].p == 2);
    CHECK(hits[0].n == 1);
    CHECK(hits[0].phase_distance < 1e-12);
}

TEST_CASE("tolerance pi keeps every prime") {
    const auto hits = scan_ray(RaySpec::make(1.0, 0.0, std::numbers::pi), make(100'000));
    CHECK(hits.size() == 9592);
    for (std::size_t i = 1; i < hits.size(); ++i) CHECK(hits[i - 1].phase_distance <= hits[i].phase_distance);
}

TEST_CASE("hit count follows the equidistribution estimate") {
    const SieveConfig config = make(1'000'000);
    const auto hits = scan_ray(RaySpec::make(1.0, 0.0, 1e-3), config);
    const double expected = 1e-3 / std::numbers::pi * 78498.0;
    MESSAGE("y=1 gamma=0 tol=1e-3 to 1e6: " << hits.size() << " hits, estimate " << expected);
    CHECK(static_cast<double>(hits.size()) >= expected / 3.0);
    CHECK(static_cast<double>(hits.size()) <= expected * 3.0);

    // Widening the band by 10 widens the count by roughly 10 for a fast-turning ray.
    const RaySpec fast = RaySpec::make(40.0, 1.0, 1e-3);
    const double narrow = static_cast<double>(scan_ray(fast, config).size());
    const double wide = static_cast<double>(scan_ray(RaySpec::make(40.0, 1.0, 1e-2), config).size());
    CHECK(wide / narrow == doctest::Approx(10.0).epsilon(0.25));

    // Every hit really is within tolerance, by a 256-bit recomputation.
    for (const RayHit& h : hits) {
        using oracle::Big;
        const Big two_pi = Big::pi() + Big::pi();
        const Big raw = Big::from_uint(h.p).log() - two_pi * Big(static_cast<double>(h.n));
        const double dist = std::abs(raw.to_double());
        CHECK(dist <= 1e-3 * (1.0 + 1e-12));
        CHECK(dist == doctest::Approx(h.phase_distance).epsilon(1e-9));
    }
}

TEST_CASE("check_triple examples") {
    const TripleCertificate a = check_triple(2, 3, 5, 1, 2);
    CHECK(a.exact_inequality_holds);
    CHECK(a.lhs_digits == "20");
    CHECK(a.rhs_digits == "18");
    CHECK(a.residual == doctest::Approx(0.10536051565782630123).epsilon(1e-15));

    const TripleCertificate b = check_triple(3, 5, 7, 2, 3);
    CHECK(b.exact_inequality_holds);
    CHECK(b.lhs_digits == "1323");
    CHECK(b.rhs_digits == "1125");
    CHECK(b.residual == doctest::Approx(0.16211884947643517780).epsilon(1e-15));
}

TEST_CASE("check_triple rejects invalid input") {
    CHECK_THROWS_AS(check_triple(2, 3, 5, 1, 1), ValidationError);
    CHECK_THROWS_AS(check_triple(2, 3, 5, 2, 1), ValidationError);
    CHECK_THROWS_AS(check_triple(2, 3, 5, 0, 1), ValidationError);
    CHECK_THROWS_AS(check_triple(2, 4, 5, 1, 2), ValidationError);
    CHECK_THROWS_AS(check_triple(3, 2, 5, 1, 2), ValidationError);
    CHECK_THROWS_AS(check_triple(2, 3, 5, 1, 1'000'000), ValidationError);
}

TEST_CASE("random triples always certify") {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p <= 10'000; ++p)
        if (oracle::trial_division(p)) primes.push_back(p);
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<std::uint64_t> k_dist(2, 20);
    for (int i = 0; i < 500; ++i) {
        std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
        if (a == b || b == c || a == c) continue;
        std::array<std::size_t, 3> idx{a, b, c};
        std::sort(idx.begin(), idx.end());
        const std::uint64_t k = k_dist(rng);
        const std::uint64_t h = std::uniform_int_distribution<std::uint64_t>(1, k - 1)(rng);
        REQUIRE(check_triple(primes[idx[0]], primes[idx[1]], primes[idx[2]], h, k).exact_inequality_holds);
    }
}

TEST_CASE("Miller-Rabin against trial division") {
    for (std::uint64_t n = 0; n < 100'000; ++n) REQUIRE(is_prime(n) == oracle::trial_division(n));
    CHECK(is_prime(18446744073709551557ull));
    CHECK_FALSE(is_prime(3215031751ull));       // strong pseudoprime to 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051ull));
}

TEST_CASE("rational approximations") {
    using P = std::pair<std::uint64_t, std::uint64_t>;
    CHECK(rational_exponent_guess(2, 3, 5, 4) == P{4, 9});
    CHECK(rational_exponent_guess(2, 3, 5, 1) == P{1, 2});
    CHECK(best_rational_approximation(2.0, 100) == P{1, 2});
    CHECK(best_rational_approximation(std::numbers::pi, 7) == P{7, 22});
    CHECK(best_rational_approximation(std::numbers::pi, 200) == P{113, 355});
    CHECK(best_rational_approximation(2.7, 1) == P{1, 3});
    // Cut off one convergent short of 9/4.
    CHECK(best_rational_approximation(2.2599, 3) == P{3, 7});
    CHECK_THROWS_AS(best_rational_approximation(1.0, 0), DomainError);
    CHECK_THROWS_AS(best_rational_approximation(-1.0, 5), DomainError);

    // Brute force: no other fraction with den <= max is strictly closer.
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> x_dist(0.01, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double x = x_dist(rng);
        const auto [den, num] = best_rational_approximation(x, 50);
        const double err = std::abs(x - static_cast<double>(num) / static_cast<double>(den));
        for (std::uint64_t q = 1; q <= 50; ++q) {
            const double p = std::round(x * static_cast<double>(q));
            REQUIRE(std::abs(x - p / static_cast<double>(q)) >= err - 1e-15);
        }
    }
}

TEST_CASE("ray parameter validation") {
    CHECK_THROWS_AS(RaySpec::make(0.0, 0.0, 1e-3), DomainError);
    CHECK_THROWS_AS(RaySpec::make(1.0, -1.0, 1e-3), DomainError);
    CHECK_THROWS_AS(RaySpec::make(1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(RaySpec::make(1.0, 0.0, 4.0), DomainError);
}
