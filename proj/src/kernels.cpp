#include "pmkt/kernels.hpp"

namespace pmkt::kernels {

namespace {

struct Backend {
    const char* name;
    double (*reduce_sum)(std::span<const double>);
    double (*reduce_dot)(std::span<const double>, std::span<const double>);
    double (*reduce_max)(std::span<const double>);
    double (*gather_dot)(std::span<const double>, std::span<const std::int32_t>);
    void (*growth_update)(std::span<const double>, std::span<const double>, double, double,
                          std::span<double>);
};

constexpr Backend scalar_backend{
    "scalar",          scalar::reduce_sum, scalar::reduce_dot,
    scalar::reduce_max, scalar::gather_dot, scalar::growth_update,
};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Backend avx2_backend{
    "avx2",          avx2::reduce_sum, avx2::reduce_dot,
    avx2::reduce_max, avx2::gather_dot, avx2::growth_update,
};
#endif

#if defined(__aarch64__)
constexpr Backend neon_backend{
    "neon",          neon::reduce_sum, neon::reduce_dot,
    neon::reduce_max, neon::gather_dot, neon::growth_update,
};
#endif

const Backend& pick_backend() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2::supported()) return avx2_backend;
#endif
#if defined(__aarch64__)
    return neon_backend;
#endif
    return scalar_backend;
}

const Backend& active() {
    static const Backend& b = pick_backend();
    return b;
}

} // namespace

const char* active_backend() { return active().name; }

double reduce_sum(std::span<const double> x) { return active().reduce_sum(x); }

double reduce_dot(std::span<const double> x, std::span<const double> y) {
    return active().reduce_dot(x, y);
}

double reduce_max(std::span<const double> x) { return active().reduce_max(x); }

double gather_dot(std::span<const double> x, std::span<const std::int32_t> idx) {
    return active().gather_dot(x, idx);
}

void growth_update(std::span<const double> x, std::span<const double> y, double alpha,
                   double beta, std::span<double> out) {
    active().growth_update(x, y, alpha, beta, out);
}

} // namespace pmkt::kernels
