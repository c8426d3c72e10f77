#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <limits>

#include "pmkt/kernels.hpp"

// AVX2 variants. Four double lanes map onto the four partial sums of the
// scalar reference, and the horizontal combine uses the same (s0+s1)+(s2+s3)
// order, so results are bit-identical to the scalar path. No FMA: the
// reference evaluates multiply and add as separate roundings.

namespace pmkt::kernels::avx2 {

bool supported() {
    return __builtin_cpu_supports("avx2") != 0;
}

namespace {

inline double combine_lanes(__m256d acc) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

} // namespace

double reduce_sum(std::span<const double> x) {
    const std::size_t n = x.size();
    const double* p = x.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
    double total = combine_lanes(acc);
    for (; i < n; ++i) total += p[i];
    return total;
}

double reduce_dot(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* py = y.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i)));
    double total = combine_lanes(acc);
    for (; i < n; ++i) total += px[i] * py[i];
    return total;
}

double reduce_max(std::span<const double> x) {
    const std::size_t n = x.size();
    const double* p = x.data();
    const double ninf = -std::numeric_limits<double>::infinity();
    __m256d acc = _mm256_set1_pd(ninf);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(p + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double m = lane[0];
    if (lane[1] > m) m = lane[1];
    if (lane[2] > m) m = lane[2];
    if (lane[3] > m) m = lane[3];
    for (; i < n; ++i)
        if (p[i] > m) m = p[i];
    return m;
}

double gather_dot(std::span<const double> x, std::span<const std::int32_t> idx) {
    const std::size_t n = x.size();
    const double* p = x.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m128i ind = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx.data() + i));
        const __m256d gathered = _mm256_i32gather_pd(p, ind, 8);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(p + i), gathered));
    }
    double total = combine_lanes(acc);
    for (; i < n; ++i) total += p[i] * p[static_cast<std::size_t>(idx[i])];
    return total;
}

void growth_update(std::span<const double> x, std::span<const double> y, double alpha,
                   double beta, std::span<double> out) {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* py = y.data();
    double* po = out.data();
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vb = _mm256_set1_pd(beta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(px + i);
        const __m256d vy = _mm256_loadu_pd(py + i);
        const __m256d grown = _mm256_add_pd(vx, _mm256_mul_pd(va, vx));
        _mm256_storeu_pd(po + i, _mm256_sub_pd(grown, _mm256_mul_pd(vb, vy)));
    }
    for (; i < n; ++i) po[i] = (px[i] + alpha * px[i]) - beta * py[i];
}

} // namespace pmkt::kernels::avx2

#endif // x86-64
