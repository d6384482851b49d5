#pragma once

#include <mpfr.h>

#include <cstdint>

namespace sector_primes::detail {

// Minimal owning wrapper; arithmetic is done through the mpfr_* calls on get().
class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(value_, prec); }
    MpfrValue(mpfr_prec_t prec, double d) : MpfrValue(prec) { mpfr_set_d(value_, d, MPFR_RNDN); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    ~MpfrValue() { mpfr_clear(value_); }

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    void set_uint(std::uint64_t n) {
        static_assert(sizeof(unsigned long) >= sizeof(std::uint64_t));
        mpfr_set_ui(value_, static_cast<unsigned long>(n), MPFR_RNDN);
    }

private:
    mpfr_t value_;
};

}  // namespace sector_primes::detail
