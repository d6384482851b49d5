#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sector_primes/aggregate.hpp"

using namespace sector_primes;

namespace {

SieveConfig make(std::uint64_t limit, std::uint64_t segment_size = 4096, unsigned workers = 1) {
    SieveConfig c;
    c.limit = limit;
    c.segment_size = segment_size;
    c.worker_count = workers;
    return c;
}

const SectorParams kUnit = SectorParams::make(1.0, 0.0, 0.5);

const ShellStats* find(const std::vector<ShellStats>& shells, ShellKind kind, std::uint64_t n) {
    for (const ShellStats& s : shells)
        if (s.kind == kind && s.n == n) return &s;
    return nullptr;
}

}  // namespace

TEST_CASE("limit 70 at y=1") {
    const AccumulateResult r = accumulate(kUnit, constants_of(kUnit), make(70));
    const ShellStats* a0 = find(r.shells, ShellKind::A, 0);
    const ShellStats* b0 = find(r.shells, ShellKind::B, 0);
    REQUIRE(a0);
    REQUIRE(b0);
    CHECK(a0->count == 1);
    CHECK(a0->recip_sum == 0.5);
    CHECK(a0->complete);
    CHECK(b0->count == 14);
    CHECK(b0->recip_sum == doctest::Approx(0.53766656051894572632).epsilon(1e-15));
    CHECK(b0->complete);
    // A1 starts at 187.9, beyond the limit, so the list stops at B0.
    CHECK(r.shells.size() == 2);
    CHECK(r.sums.count_all == 19);
    CHECK(r.sums.count_outside_shells == 4);  // 3, 5, 7, 67
    CHECK(r.sums.a_not_plus == 0);
    CHECK(r.sums.b_not_minus == 0);
    CHECK(r.sums.boundary_exceptions.empty());
    REQUIRE(r.decades.size() == 1);
    CHECK(r.decades[0].x == 10);
    CHECK(r.decades[0].count_all == 4);
    CHECK(r.decades[0].sum_plus == 0.5);
}

TEST_CASE("limit 2 yields a single prime") {
    const AccumulateResult r = accumulate(kUnit, constants_of(kUnit), make(2, 2));
    CHECK(r.sums.count_all == 1);
    CHECK(r.sums.sum_plus == 0.5);
    CHECK(r.sums.sum_minus == 0.0);
    CHECK(r.decades.empty());
}

TEST_CASE("sector sums match a brute-force oracle") {
    const std::uint64_t limit = 200'000;
    const SectorParams params = SectorParams::make(3.0, 1.2, 0.35);
    const AccumulateResult r = accumulate(params, constants_of(params), make(limit, 777, 2));
    oracle::Big plus, minus, all;
    std::uint64_t np = 0, nm = 0;
    for (const std::uint64_t p : oracle::simple_sieve(limit)) {
        const oracle::Phase ph = oracle::phase(params.y, params.alpha, params.K, p);
        const oracle::Big t = oracle::Big(1.0) / oracle::Big::from_uint(p);
        all = all + t;
        if (ph.sector == oracle::Sector::Plus) plus = plus + t, ++np;
        if (ph.sector == oracle::Sector::Minus) minus = minus + t, ++nm;
    }
    CHECK(r.sums.count_plus == np);
    CHECK(r.sums.count_minus == nm);
    CHECK(r.sums.sum_plus == doctest::Approx(plus.to_double()).epsilon(1e-15));
    CHECK(r.sums.sum_minus == doctest::Approx(minus.to_double()).epsilon(1e-15));
    CHECK(r.sums.sum_all == doctest::Approx(all.to_double()).epsilon(1e-15));
}

TEST_CASE("conservation and per-shell sanity") {
    const SectorParams params = SectorParams::make(2.0, 0.0, 0.5);
    const AccumulateResult r = accumulate(params, constants_of(params), make(1'000'000));
    std::uint64_t in_shells = 0;
    for (const ShellStats& s : r.shells) {
        in_shells += s.count;
        if (s.count > 0) {
            CHECK(s.recip_sum <= static_cast<double>(s.count) / s.lo);
            CHECK(s.recip_sum >= static_cast<double>(s.count) / s.hi * (1.0 - 1e-12));
        }
    }
    CHECK(in_shells + r.sums.count_outside_shells == r.sums.count_all);
    CHECK(r.sums.count_all == 78498);
    CHECK(r.sums.count_plus + r.sums.count_minus <= r.sums.count_all);
    CHECK(r.sums.sum_plus + r.sums.sum_minus <= r.sums.sum_all);
    // Sector membership implies shell membership.
    CHECK(r.sums.a_not_plus <= 2);
    CHECK(r.sums.b_not_minus <= 2);
}

TEST_CASE("verdicts only on complete shells above M past N") {
    const BoundConstants k = [] {
        BoundConstants c = constants_of(kUnit);
        c.N = 1;
        c.M = 100.0;
        return c;
    }();
    const AccumulateResult r = accumulate(kUnit, k, make(1'000'000));
    for (const ShellStats& s : r.shells) {
        CAPTURE(s.n);
        const bool applies = s.complete && s.above_M && s.n > 1;
        CHECK((s.count_ok != Verdict::NotApplicable) == applies);
        CHECK(s.count_bound.has_value() == (s.n > 1));
    }
    const ShellStats* a2 = find(r.shells, ShellKind::A, 2);
    REQUIRE(a2);
    CHECK(a2->count_ok == Verdict::Holds);
    CHECK(a2->recip_ok == Verdict::Holds);
    // B2 starts at e^{14.66} = 2.3e6, past the limit, so the list ends at A2.
    CHECK(r.shells.size() == 5);
    CHECK_FALSE(find(r.shells, ShellKind::B, 2));

    // A2 = (100626.7, 817142] is cut by a limit of 5e5.
    const AccumulateResult cut = accumulate(kUnit, k, make(500'000));
    const ShellStats* partial = find(cut.shells, ShellKind::A, 2);
    REQUIRE(partial);
    CHECK_FALSE(partial->complete);
    CHECK(partial->count_ok == Verdict::NotApplicable);
    CHECK(partial->count_bound.has_value());
}

TEST_CASE("compensated sums agree with a wide accumulator at 1e7") {
    const SectorParams params = SectorParams::make(10.0, 0.0, 0.5);
    const AccumulateResult r = accumulate(params, constants_of(params), make(10'000'000, 65536, 2));
    long double plus = 0, minus = 0, all = 0;
    for (const std::uint64_t p : oracle::simple_sieve(10'000'000)) {
        const long double t = 1.0L / static_cast<long double>(p);
        all += t;
        // Classification comes from the library; only the summation is under test here.
        const Sector s = phase_of(params, p).sector;
        if (s == Sector::Plus) plus += t;
        if (s == Sector::Minus) minus += t;
    }
    CHECK(std::abs(r.sums.sum_all - static_cast<double>(all)) / static_cast<double>(all) < 1e-12);
    CHECK(std::abs(r.sums.sum_plus - static_cast<double>(plus)) / static_cast<double>(plus) < 1e-12);
    CHECK(std::abs(r.sums.sum_minus - static_cast<double>(minus)) / static_cast<double>(minus) < 1e-12);
}

TEST_CASE("segment size and worker count leave every field unchanged") {
    const SectorParams params = SectorParams::make(4.0, 2.0, 0.6);
    const BoundConstants k = constants_of(params);
    const AccumulateResult a = accumulate(params, k, make(500'000, 2, 1));
    const AccumulateResult b = accumulate(params, k, make(500'000, 100'000, 4));
    CHECK(a.sums == b.sums);
    CHECK(a.shells == b.shells);
    CHECK(a.decades == b.decades);
}
