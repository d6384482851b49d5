#pragma once

// Test-only reference implementations. Nothing here calls into the library:
// a plain byte sieve, trial division, and direct 256-bit MPFR evaluations of
// phases and closed-form bounds.

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

inline std::uint64_t simple_count(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::uint64_t count = 0;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        ++count;
        if (i <= limit / i)
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return count;
}

inline bool trial_division(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class Big {
public:
    static constexpr mpfr_prec_t kPrec = 256;
    Big() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
    explicit Big(double d) : Big() { mpfr_set_d(v_, d, MPFR_RNDN); }
    Big(const Big& o) : Big() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Big& operator=(const Big& o) { mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
    ~Big() { mpfr_clear(v_); }

    static Big from_uint(std::uint64_t n) { Big b; mpfr_set_ui(b.v_, n, MPFR_RNDN); return b; }
    static Big pi() { Big b; mpfr_const_pi(b.v_, MPFR_RNDN); return b; }

    friend Big operator+(const Big& a, const Big& b) { Big r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Big operator-(const Big& a, const Big& b) { Big r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Big operator*(const Big& a, const Big& b) { Big r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Big operator/(const Big& a, const Big& b) { Big r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    Big operator-() const { Big r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    friend bool operator<(const Big& a, const Big& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator<=(const Big& a, const Big& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>(const Big& a, const Big& b) { return mpfr_greater_p(a.v_, b.v_); }

    Big log() const { Big r; mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
    Big exp() const { Big r; mpfr_exp(r.v_, v_, MPFR_RNDN); return r; }
    Big cos() const { Big r; mpfr_cos(r.v_, v_, MPFR_RNDN); return r; }
    Big acos() const { Big r; mpfr_acos(r.v_, v_, MPFR_RNDN); return r; }
    Big floor() const { Big r; mpfr_floor(r.v_, v_); return r; }
    Big round() const { Big r; mpfr_round(r.v_, v_); return r; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

enum class Sector { Plus, Minus, Neither };

struct Phase {
    double theta;
    double cos_theta;
    Sector sector;
    std::optional<std::pair<char, long>> shell;  // ('A' | 'B', n)
};

/// Definition-level classification: shell A_n iff 2n pi - beta < raw <= 2n pi + beta,
/// B_n likewise around (2n+1) pi, found by scanning the two candidate multiples.
inline Phase phase(double y, double alpha, double K, std::uint64_t p) {
    const Big raw = Big(y) * Big::from_uint(p).log() + Big(alpha);
    const Big pi = Big::pi();
    const Big two_pi = pi + pi;
    const Big beta = Big(K).acos();
    const Big c = raw.cos();

    Phase out;
    out.theta = (raw - (raw / two_pi).floor() * two_pi).to_double();
    out.cos_theta = c.to_double();
    out.sector = Big(K) < c ? Sector::Plus : (c < -Big(K) ? Sector::Minus : Sector::Neither);

    const long m0 = (raw / pi).floor().to_long();
    for (long m = m0; m <= m0 + 1; ++m) {
        if (m < 0) continue;
        const Big centre = Big(static_cast<double>(m)) * pi;
        if (centre - beta < raw && raw <= centre + beta) {
            out.shell = std::make_pair(m % 2 == 0 ? 'A' : 'B', m / 2);
            break;
        }
    }
    return out;
}

/// (c, d) evaluated straight from their defining expressions in 256 bits.
inline std::pair<double, double> constants(double y, double alpha, double K) {
    const Big beta = Big(K).acos();
    const Big e1 = (-(beta / (Big(2.0) * Big(y)))).exp();
    const Big e3 = (-(Big(3.0) * beta / (Big(2.0) * Big(y)))).exp();
    const Big c = Big(y) * Big::pi() * (e1 - e3);
    const Big d = Big(y) * Big(alpha) * (e1 - e3) + Big(y) * beta * (e1 + e3);
    return {c.to_double(), d.to_double()};
}

/// Two-fraction reciprocal bound y e1/(X + beta) - y e3/(X - beta) in 256 bits.
inline double recip_two_fraction(double y, double alpha, double K, bool kind_b, std::uint64_t n) {
    const Big beta = Big(K).acos();
    const Big x = Big(2.0 * static_cast<double>(n) + (kind_b ? 1.0 : 0.0)) * Big::pi() - Big(alpha);
    const Big e1 = (-(beta / (Big(2.0) * Big(y)))).exp();
    const Big e3 = (-(Big(3.0) * beta / (Big(2.0) * Big(y)))).exp();
    return (Big(y) * e1 / (x + beta) - Big(y) * e3 / (x - beta)).to_double();
}

/// Unsimplified shell-count bound e^{-b} hi/ln hi - e^{b} lo/ln lo in 256 bits.
inline double count_bound(double y, double alpha, double K, bool kind_b, std::uint64_t n) {
    const Big beta = Big(K).acos();
    const Big x = Big(2.0 * static_cast<double>(n) + (kind_b ? 1.0 : 0.0)) * Big::pi() - Big(alpha);
    const Big b = beta / (Big(2.0) * Big(y));
    const Big log_hi = (x + beta) / Big(y);
    const Big log_lo = (x - beta) / Big(y);
    return ((-b).exp() * log_hi.exp() / log_hi - b.exp() * log_lo.exp() / log_lo).to_double();
}

}  // namespace oracle
