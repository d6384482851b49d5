#pragma once

#include <cmath>
#include <cstdint>

namespace sector_primes {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving roughly 106 bits of
/// significand. Only the operations the phase computation needs are provided.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    /// Exact for every 64-bit n (both 32-bit halves are exact doubles).
    static DoubleDouble from_uint(std::uint64_t n);

    double to_double() const { return hi + lo; }
};

namespace dd {

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DoubleDouble add(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

}  // namespace dd

inline DoubleDouble DoubleDouble::from_uint(std::uint64_t n) {
    const double high = static_cast<double>(n >> 32) * 0x1p32;
    const double low = static_cast<double>(n & 0xffffffffu);
    return dd::two_sum(high, low);
}

namespace dd {

inline DoubleDouble neg(DoubleDouble a) { return {-a.hi, -a.lo}; }

inline DoubleDouble sub(DoubleDouble a, DoubleDouble b) { return add(a, neg(b)); }

inline DoubleDouble mul(DoubleDouble a, double b) {
    DoubleDouble p = two_prod(a.hi, b);
    p.lo = std::fma(a.lo, b, p.lo);
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble mul(DoubleDouble a, DoubleDouble b) {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble ldexp(DoubleDouble a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline bool less(DoubleDouble a, DoubleDouble b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }

/// ln 2, pi and 2*pi rounded to double-double.
inline constexpr DoubleDouble kLn2{6.93147180559945286e-01, 2.31904681384629956e-17};
inline constexpr DoubleDouble kPi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr DoubleDouble kTwoPi{6.283185307179586232e+00, 2.449293598294706414e-16};

/// e^x to double-double accuracy for |x| < 700.
DoubleDouble exp(DoubleDouble x);

/// ln(n) to double-double accuracy, n >= 1.
DoubleDouble log(std::uint64_t n);

/// ln(a) to double-double accuracy, a > 0.
DoubleDouble log(DoubleDouble a);

}  // namespace dd
}  // namespace sector_primes
