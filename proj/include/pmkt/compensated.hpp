#pragma once

#include <cmath>

namespace pmkt {

/// Neumaier-compensated accumulator. Keeps long sums of mixed-magnitude
/// terms accurate to ~1 ulp of the true result.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

} // namespace pmkt
