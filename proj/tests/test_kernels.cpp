#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pmkt/kernels.hpp"
#include "pmkt/rng.hpp"

using namespace pmkt;

namespace {

std::vector<double> random_values(Xoshiro256pp& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

std::vector<std::int32_t> random_indices(Xoshiro256pp& rng, std::size_t n) {
    std::vector<std::int32_t> idx(n);
    for (auto& i : idx) i = static_cast<std::int32_t>(rng.next() % n);
    return idx;
}

// lengths around the 4-lane block boundaries plus a few larger ones
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 15, 16, 17, 31, 33, 100, 257, 1001};

long double reference_sum(const std::vector<double>& x) {
    long double s = 0.0L;
    for (double v : x) s += static_cast<long double>(v);
    return s;
}

} // namespace

TEST_CASE("dispatched kernels are bit-identical to the scalar reference") {
    INFO("active backend: " << kernels::active_backend());
    Xoshiro256pp rng(601);
    for (std::size_t n : kLengths) {
        if (n == 0) {
            CHECK(kernels::reduce_sum({}) == kernels::scalar::reduce_sum({}));
            continue;
        }
        const auto x = random_values(rng, n, -100.0, 100.0);
        const auto y = random_values(rng, n, -10.0, 10.0);
        const auto idx = random_indices(rng, n);

        CHECK(kernels::reduce_sum(x) == kernels::scalar::reduce_sum(x));
        CHECK(kernels::reduce_dot(x, y) == kernels::scalar::reduce_dot(x, y));
        CHECK(kernels::reduce_max(x) == kernels::scalar::reduce_max(x));
        CHECK(kernels::gather_dot(x, idx) == kernels::scalar::gather_dot(x, idx));

        std::vector<double> out_a(n), out_b(n);
        kernels::growth_update(x, y, 0.01, 2.0, out_a);
        kernels::scalar::growth_update(x, y, 0.01, 2.0, out_b);
        CHECK(out_a == out_b);
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
    if (!kernels::avx2::supported()) {
        MESSAGE("avx2 not available on this host; skipping");
        return;
    }
    Xoshiro256pp rng(602);
    for (std::size_t n : kLengths) {
        const auto x = random_values(rng, std::max<std::size_t>(n, 1), -1e6, 1e6);
        const auto y = random_values(rng, std::max<std::size_t>(n, 1), -1.0, 1.0);
        const auto idx = random_indices(rng, std::max<std::size_t>(n, 1));
        const std::span<const double> xs(x.data(), n), ys(y.data(), n);
        const std::span<const std::int32_t> is(idx.data(), n);

        CHECK(kernels::avx2::reduce_sum(xs) == kernels::scalar::reduce_sum(xs));
        CHECK(kernels::avx2::reduce_dot(xs, ys) == kernels::scalar::reduce_dot(xs, ys));
        CHECK(kernels::avx2::reduce_max(xs) == kernels::scalar::reduce_max(xs));
        CHECK(kernels::avx2::gather_dot(xs, is) == kernels::scalar::gather_dot(xs, is));

        std::vector<double> out_a(n), out_b(n);
        kernels::avx2::growth_update(xs, ys, 0.01, 0.5, out_a);
        kernels::scalar::growth_update(xs, ys, 0.01, 0.5, out_b);
        CHECK(out_a == out_b);
    }
}
#endif

TEST_CASE("reductions agree with a long-double reference") {
    Xoshiro256pp rng(603);
    for (std::size_t n : {10u, 100u, 10000u}) {
        const auto x = random_values(rng, n, -1000.0, 1000.0);
        const long double ref = reference_sum(x);
        CHECK(kernels::reduce_sum(x) ==
              doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    }
}

TEST_CASE("growth_update applies the growth rule elementwise") {
    const std::vector<double> r{2.0, 3.0, 10.0, 0.5, 7.0};
    const std::vector<double> omega{0.0, 1.0, 4.0, 0.25, 2.5};
    std::vector<double> out(r.size());
    kernels::growth_update(r, omega, 0.01, 2.0, out);
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(out[i] == (r[i] + 0.01 * r[i]) - 2.0 * omega[i]);
}

TEST_CASE("gather_dot matches a naive loop") {
    Xoshiro256pp rng(604);
    const auto x = random_values(rng, 137, 0.1, 10.0);
    const auto idx = random_indices(rng, 137);
    long double ref = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i)
        ref += static_cast<long double>(x[i]) * x[static_cast<std::size_t>(idx[i])];
    CHECK(kernels::gather_dot(x, idx) ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("reduce_max on empty input is -infinity") {
    CHECK(kernels::reduce_max({}) == -std::numeric_limits<double>::infinity());
    const std::vector<double> v{-5.0, -2.0, -9.0};
    CHECK(kernels::reduce_max(v) == -2.0);
}
