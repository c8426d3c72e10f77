#pragma once

#include <cstdint>
#include <span>

// Data-parallel inner loops of the simulator: the growth update and the
// moment reductions behind the observables. Scalar reference kernels plus
// SIMD variants (AVX2 on x86-64, NEON on aarch64) selected at runtime.
//
// Every reduction uses one fixed evaluation order -- four interleaved
// partial sums s_j over x[4k+j], combined as (s0+s1)+(s2+s3), then the
// tail appended sequentially -- and no FMA contraction. The SIMD variants
// perform the identical IEEE operations lane-wise, so all backends return
// bit-identical results; the equivalence tests assert exactly that.

namespace pmkt::kernels {

namespace scalar {

double reduce_sum(std::span<const double> x);
double reduce_dot(std::span<const double> x, std::span<const double> y);
double reduce_max(std::span<const double> x); // -inf on empty input
/// sum over i of x[i] * x[idx[i]]; idx values must be in [0, x.size()).
double gather_dot(std::span<const double> x, std::span<const std::int32_t> idx);
/// out[i] = (x[i] + alpha*x[i]) - beta*y[i], evaluated in exactly that order.
void growth_update(std::span<const double> x, std::span<const double> y,
                   double alpha, double beta, std::span<double> out);

} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {

bool supported(); // runtime CPUID check

double reduce_sum(std::span<const double> x);
double reduce_dot(std::span<const double> x, std::span<const double> y);
double reduce_max(std::span<const double> x);
double gather_dot(std::span<const double> x, std::span<const std::int32_t> idx);
void growth_update(std::span<const double> x, std::span<const double> y,
                   double alpha, double beta, std::span<double> out);

} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {

double reduce_sum(std::span<const double> x);
double reduce_dot(std::span<const double> x, std::span<const double> y);
double reduce_max(std::span<const double> x);
double gather_dot(std::span<const double> x, std::span<const std::int32_t> idx);
void growth_update(std::span<const double> x, std::span<const double> y,
                   double alpha, double beta, std::span<double> out);

} // namespace neon
#endif

/// Name of the backend the dispatcher picked ("scalar", "avx2", "neon").
const char* active_backend();

// Dispatched entry points. Resolved once, at first use.
double reduce_sum(std::span<const double> x);
double reduce_dot(std::span<const double> x, std::span<const double> y);
double reduce_max(std::span<const double> x);
double gather_dot(std::span<const double> x, std::span<const std::int32_t> idx);
void growth_update(std::span<const double> x, std::span<const double> y,
                   double alpha, double beta, std::span<double> out);

} // namespace pmkt::kernels
