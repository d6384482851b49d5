#pragma once

#include <cmath>

namespace sector_primes {

/// Neumaier summation: the running correction captures the low-order bits lost
/// by whichever operand is smaller, so the error stays O(ulp) of the total
/// regardless of term count or ordering of magnitudes.
class NeumaierSum {
public:
    NeumaierSum() = default;
    NeumaierSum(double sum, double compensation) : sum_(sum), compensation_(compensation) {}

    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            compensation_ += (sum_ - t) + value;
        else
            compensation_ += (value - t) + sum_;
        sum_ = t;
    }

    NeumaierSum& operator+=(double value) {
        add(value);
        return *this;
    }

    double value() const { return sum_ + compensation_; }

    // Raw state, for checkpointing.
    double partial() const { return sum_; }
    double compensation() const { return compensation_; }

    friend bool operator==(const NeumaierSum&, const NeumaierSum&) = default;

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace sector_primes
