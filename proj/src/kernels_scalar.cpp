#include "pmkt/kernels.hpp"

#include <limits>

// Reference kernels. The blocked loops below define the arithmetic order
// every SIMD backend must reproduce bit-for-bit (see kernels.hpp).

namespace pmkt::kernels::scalar {

double reduce_sum(std::span<const double> x) {
    const std::size_t n = x.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i];
        s1 += x[i + 1];
        s2 += x[i + 2];
        s3 += x[i + 3];
    }
    double total = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) total += x[i];
    return total;
}

double reduce_dot(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    double total = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) total += x[i] * y[i];
    return total;
}

double reduce_max(std::span<const double> x) {
    const std::size_t n = x.size();
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

double gather_dot(std::span<const double> x, std::span<const std::int32_t> idx) {
    const std::size_t n = x.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * x[static_cast<std::size_t>(idx[i])];
        s1 += x[i + 1] * x[static_cast<std::size_t>(idx[i + 1])];
        s2 += x[i + 2] * x[static_cast<std::size_t>(idx[i + 2])];
        s3 += x[i + 3] * x[static_cast<std::size_t>(idx[i + 3])];
    }
    double total = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) total += x[i] * x[static_cast<std::size_t>(idx[i])];
    return total;
}

void growth_update(std::span<const double> x, std::span<const double> y, double alpha,
                   double beta, std::span<double> out) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (x[i] + alpha * x[i]) - beta * y[i];
}

} // namespace pmkt::kernels::scalar
