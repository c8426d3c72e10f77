#if defined(__aarch64__)

#include <arm_neon.h>

#include <limits>

#include "pmkt/kernels.hpp"

// NEON variants. Two float64x2_t accumulators hold the four partial sums
// (lanes 0/1 of acc01 are s0/s1, lanes 0/1 of acc23 are s2/s3); the final
// combine matches the scalar (s0+s1)+(s2+s3) order exactly. No FMA.

namespace pmkt::kernels::neon {

namespace {

inline double combine_lanes(float64x2_t acc01, float64x2_t acc23) {
    const double s01 = vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1);
    const double s23 = vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1);
    return s01 + s23;
}

} // namespace

double reduce_sum(std::span<const double> x) {
    const std::size_t n = x.size();
    const double* p = x.data();
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc01 = vaddq_f64(acc01, vld1q_f64(p + i));
        acc23 = vaddq_f64(acc23, vld1q_f64(p + i + 2));
    }
    double total = combine_lanes(acc01, acc23);
    for (; i < n; ++i) total += p[i];
    return total;
}

double reduce_dot(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* py = y.data();
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(px + i), vld1q_f64(py + i)));
        acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(px + i + 2), vld1q_f64(py + i + 2)));
    }
    double total = combine_lanes(acc01, acc23);
    for (; i < n; ++i) total += px[i] * py[i];
    return total;
}

double reduce_max(std::span<const double> x) {
    const std::size_t n = x.size();
    const double* p = x.data();
    const double ninf = -std::numeric_limits<double>::infinity();
    float64x2_t acc01 = vdupq_n_f64(ninf);
    float64x2_t acc23 = vdupq_n_f64(ninf);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc01 = vmaxq_f64(acc01, vld1q_f64(p + i));
        acc23 = vmaxq_f64(acc23, vld1q_f64(p + i + 2));
    }
    double m = vgetq_lane_f64(acc01, 0);
    if (vgetq_lane_f64(acc01, 1) > m) m = vgetq_lane_f64(acc01, 1);
    if (vgetq_lane_f64(acc23, 0) > m) m = vgetq_lane_f64(acc23, 0);
    if (vgetq_lane_f64(acc23, 1) > m) m = vgetq_lane_f64(acc23, 1);
    for (; i < n; ++i)
        if (p[i] > m) m = p[i];
    return m;
}

double gather_dot(std::span<const double> x, std::span<const std::int32_t> idx) {
    // Gather is load-bound; keep the blocked scalar arithmetic.
    const std::size_t n = x.size();
    const double* p = x.data();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += p[i] * p[static_cast<std::size_t>(idx[i])];
        s1 += p[i + 1] * p[static_cast<std::size_t>(idx[i + 1])];
        s2 += p[i + 2] * p[static_cast<std::size_t>(idx[i + 2])];
        s3 += p[i + 3] * p[static_cast<std::size_t>(idx[i + 3])];
    }
    double total = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) total += p[i] * p[static_cast<std::size_t>(idx[i])];
    return total;
}

void growth_update(std::span<const double> x, std::span<const double> y, double alpha,
                   double beta, std::span<double> out) {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* py = y.data();
    double* po = out.data();
    const float64x2_t va = vdupq_n_f64(alpha);
    const float64x2_t vb = vdupq_n_f64(beta);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vx = vld1q_f64(px + i);
        const float64x2_t vy = vld1q_f64(py + i);
        const float64x2_t grown = vaddq_f64(vx, vmulq_f64(va, vx));
        vst1q_f64(po + i, vsubq_f64(grown, vmulq_f64(vb, vy)));
    }
    for (; i < n; ++i) po[i] = (px[i] + alpha * px[i]) - beta * py[i];
}

} // namespace pmkt::kernels::neon

#endif // __aarch64__
