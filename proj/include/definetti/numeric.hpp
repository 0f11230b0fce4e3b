#pragma once

#include <cmath>

namespace definetti {

/// Neumaier compensated summation. Infinite addends propagate unchanged.
class CompensatedSum {
public:
    void add(double x) {
        if (std::isinf(x) || std::isinf(sum_)) {
            sum_ += x;
            return;
        }
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return std::isinf(sum_) ? sum_ : sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace definetti
