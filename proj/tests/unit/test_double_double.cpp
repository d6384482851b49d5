#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "sector_primes/double_double.hpp"

using namespace sector_primes;
using oracle::Big;

namespace {

// |a - ref| / |ref| with a as hi + lo evaluated in 256 bits.
double rel_error(DoubleDouble a, const Big& ref) {
    const Big value = Big(a.hi) + Big(a.lo);
    const Big diff = value - ref;
    return std::abs(diff.to_double() / ref.to_double());
}

}  // namespace

TEST_CASE("constants are the rounded 256-bit values") {
    CHECK(rel_error(dd::kPi, Big::pi()) < 1e-32);
    CHECK(rel_error(dd::kTwoPi, Big::pi() + Big::pi()) < 1e-32);
    CHECK(rel_error(dd::kLn2, Big(2.0).log()) < 1e-32);
}

TEST_CASE("from_uint is exact") {
    for (const std::uint64_t n : std::initializer_list<std::uint64_t>{0, 1, (1ull << 53) + 1, UINT64_MAX, 18446744073709551557ull}) {
        const DoubleDouble d = DoubleDouble::from_uint(n);
        CHECK((Big(d.hi) + Big(d.lo) - Big::from_uint(n)).to_double() == 0.0);
    }
}

TEST_CASE("log reaches double-double accuracy") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> any(2, UINT64_MAX);
    std::uniform_int_distribution<std::uint64_t> small(2, 1'000'000);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t n = (i % 2 == 0) ? any(rng) : small(rng);
        worst = std::max(worst, rel_error(dd::log(n), Big::from_uint(n).log()));
    }
    MESSAGE("worst relative error of dd::log: " << worst);
    CHECK(worst < 1e-30);
}

TEST_CASE("exp reaches double-double accuracy") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> dist(-40.0, 40.0);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const double x = dist(rng);
        worst = std::max(worst, rel_error(dd::exp(DoubleDouble{x}), Big(x).exp()));
    }
    CHECK(worst < 1e-30);
}

TEST_CASE("basic ops") {
    const DoubleDouble one_third = dd::mul(DoubleDouble{1.0 / 3.0}, 1.0);
    CHECK(one_third.hi == 1.0 / 3.0);
    const DoubleDouble s = dd::two_sum(1.0, 1e-20);
    CHECK(s.hi == 1.0);
    CHECK(s.lo == 1e-20);
    const DoubleDouble p = dd::two_prod(1.0 + 0x1p-30, 1.0 + 0x1p-30);
    CHECK(p.lo == 0x1p-60);
    CHECK(dd::less(DoubleDouble{1.0, -1e-30}, DoubleDouble{1.0}));
}
