#include "sector_primes/double_double.hpp"

#include <array>

namespace sector_primes::dd {

namespace {

// 1/k! for k = 3..12 as double-double.
constexpr std::array<DoubleDouble, 10> kInvFactorial{{
    {1.66666666666666657e-01, 9.25185853854297066e-18},
    {4.16666666666666644e-02, 2.31296463463574266e-18},
    {8.33333333333333322e-03, 1.15648231731787138e-19},
    {1.38888888888888894e-03, -5.30054395437357706e-20},
    {1.98412698412698413e-04, 1.72095582934207053e-22},
    {2.48015873015873016e-05, 2.15119478667758816e-23},
    {2.75573192239858925e-06, -1.85839327404647208e-22},
    {2.75573192239858883e-07, 2.37677146222502973e-23},
    {2.50521083854417202e-08, -1.44881407093591197e-24},
    {2.08767569878681002e-09, -1.20734505911325997e-25},
}};

constexpr int kHalvings = 9;

}  // namespace

DoubleDouble exp(DoubleDouble x) {
    // x = m ln2 + r, |r| <= ln2/2; then e^r via expm1 on r / 2^k and k squarings.
    const double m = std::nearbyint(x.hi / kLn2.hi);
    const DoubleDouble r = sub(x, mul(kLn2, m));
    const DoubleDouble s = ldexp(r, -kHalvings);

    // expm1(s) = s + s^2/2 + s^3/3! + ...
    DoubleDouble power = mul(s, s);
    DoubleDouble sum = add(s, ldexp(power, -1));
    for (const auto& coeff : kInvFactorial) {
        power = mul(power, s);
        const DoubleDouble term = mul(power, coeff);
        sum = add(sum, term);
        if (std::abs(term.hi) < 1e-36) break;
    }
    // (1 + e)^2 - 1 = 2e + e^2 keeps the small quantity exact through squaring.
    for (int i = 0; i < kHalvings; ++i) sum = add(ldexp(sum, 1), mul(sum, sum));
    const DoubleDouble result = add(sum, DoubleDouble{1.0});
    return ldexp(result, static_cast<int>(m));
}

DoubleDouble log(DoubleDouble a) {
    // One Newton step on f(x) = e^x - a from a correctly rounded double start
    // doubles the number of correct bits.
    const double x0 = std::log(a.hi);
    const DoubleDouble scaled = mul(a, exp(DoubleDouble{-x0}));
    return add(DoubleDouble{x0}, sub(scaled, DoubleDouble{1.0}));
}

DoubleDouble log(std::uint64_t n) { return log(DoubleDouble::from_uint(n)); }

}  // namespace sector_primes::dd
