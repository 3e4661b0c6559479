#pragma once

#include <cmath>

namespace mas::detail {

// Neumaier's variant of compensated summation. Accumulation happens in the
// order terms are added; the compensation keeps the result stable to the last
// ulp, which in practice makes sums of cluster masses independent of input
// permutation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace mas::detail
