#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pmkt/errors.hpp"
#include "pmkt/neighbor.hpp"
#include "pmkt/observables.hpp"
#include "pmkt/record.hpp"
#include "pmkt/rng.hpp"
#include "test_util.hpp"

using namespace pmkt;

TEST_CASE("pair correlation: two mutually neighboring firms") {
    const std::vector<double> radii{1.0, 3.0};
    const std::vector<std::int32_t> nbr{1, 0};
    const auto c = pair_correlation_instant(radii, nbr);
    REQUIRE(c.has_value());
    CHECK(*c == -1.0); // (3 - 4) / (5 - 4), exact in floating point
}

TEST_CASE("pair correlation: constant radii are a degenerate sample") {
    const std::vector<double> radii{2.5, 2.5, 2.5, 2.5};
    const std::vector<std::int32_t> nbr{1, 2, 3, 0};
    CHECK_FALSE(pair_correlation_instant(radii, nbr).has_value());
}

TEST_CASE("pair correlation: bounded on randomized populations") {
    Xoshiro256pp rng(701);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 200);
        std::vector<double> radii(static_cast<std::size_t>(n));
        std::vector<double> centers(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            radii[static_cast<std::size_t>(i)] = rng.uniform(0.5, 50.0);
            centers[static_cast<std::size_t>(i)] = rng.uniform(0.0, 1000.0);
        }
        const auto nbr = nearest_right_neighbors(centers, 1000.0);
        const auto c = pair_correlation_instant(radii, nbr);
        REQUIRE(c.has_value());
        CHECK(*c >= -1.0 - 1e-9);
        CHECK(*c <= 1.0 + 1e-9);
    }
}

TEST_CASE("pair correlation is invariant under affine maps of the radii") {
    Xoshiro256pp rng(702);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5 + static_cast<int>(rng.next() % 100);
        std::vector<double> radii(static_cast<std::size_t>(n)), centers(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            radii[static_cast<std::size_t>(i)] = rng.uniform(1.0, 20.0);
            centers[static_cast<std::size_t>(i)] = rng.uniform(0.0, 500.0);
        }
        const auto nbr = nearest_right_neighbors(centers, 500.0);
        const auto base = pair_correlation_instant(radii, nbr);
        REQUIRE(base.has_value());

        const double a = rng.uniform(0.1, 3.0);
        const double b = rng.uniform(-0.5, 5.0);
        std::vector<double> mapped = radii;
        for (auto& r : mapped) r = a * r + b;
        const auto scaled = pair_correlation_instant(mapped, nbr);
        REQUIRE(scaled.has_value());
        CHECK(std::abs(*scaled - *base) <= 1e-9);
    }
}

TEST_CASE("pair correlation of independent radii and neighbors averages to zero") {
    Xoshiro256pp rng(703);
    const int n = 100;
    const int samples = 1000;
    double sum = 0.0, sumsq = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> radii(n);
        std::vector<std::int32_t> nbr(n);
        for (int i = 0; i < n; ++i) {
            radii[static_cast<std::size_t>(i)] = rng.uniform(0.0, 1.0);
            // random derangement-ish map, independent of the radii
            std::int32_t k;
            do {
                k = static_cast<std::int32_t>(rng.next() % n);
            } while (k == i);
            nbr[static_cast<std::size_t>(i)] = k;
        }
        const auto c = pair_correlation_instant(radii, nbr);
        REQUIRE(c.has_value());
        sum += *c;
        sumsq += *c * *c;
    }
    const double mean = sum / samples;
    const double var = sumsq / samples - mean * mean;
    const double se = std::sqrt(var / samples);
    CHECK(std::abs(mean) <= 3.0 * se);
}

TEST_CASE("stationary correlation: averages and errors") {
    const std::vector<CorrelationSample> constant{{0, 0.3}, {1, 0.3}, {2, 0.3}};
    const auto stats = pair_correlation_stationary(constant);
    CHECK(stats.mean == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(stats.std_error == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(stats.count == 3);

    const std::vector<CorrelationSample> sym{{0, -1.0}, {1, 1.0}};
    CHECK(pair_correlation_stationary(sym).mean == 0.0);

    CHECK_THROWS_AS(pair_correlation_stationary({}), empty_record_error);
}

TEST_CASE("rank_size sorts descending with stable ties") {
    const std::vector<double> radii{1.0, 3.0, 2.0};
    const auto rs = rank_size(radii);
    REQUIRE(rs.size() == 3);
    CHECK(rs[0] == std::pair<std::int64_t, double>{1, 6.0});
    CHECK(rs[1] == std::pair<std::int64_t, double>{2, 4.0});
    CHECK(rs[2] == std::pair<std::int64_t, double>{3, 2.0});

    const std::vector<double> equal{2.0, 2.0, 2.0};
    const auto flat = rank_size(equal);
    for (const auto& [rank, size] : flat) CHECK(size == 4.0);

    // synthetic 1/k sizes come back in input order
    std::vector<double> zipf(500);
    for (std::size_t k = 0; k < zipf.size(); ++k)
        zipf[k] = 50.0 / static_cast<double>(k + 1);
    const auto rs2 = rank_size(zipf);
    for (std::size_t k = 0; k < zipf.size(); ++k)
        CHECK(rs2[k].second == 2.0 * zipf[k]);
}

TEST_CASE("fit_power_law recovers exact synthetic exponents") {
    std::vector<std::pair<std::int64_t, double>> zipf1, zipf2;
    for (std::int64_t k = 1; k <= 500; ++k) {
        zipf1.emplace_back(k, 100.0 / static_cast<double>(k));
        zipf2.emplace_back(k, 100.0 / (static_cast<double>(k) * static_cast<double>(k)));
    }
    const auto f1 = fit_power_law(zipf1, 1, 500, FitMethod::regression);
    CHECK(std::abs(f1.exponent - 1.0) <= 1e-9);
    CHECK(std::abs(f1.r_squared - 1.0) <= 1e-9);
    const auto f2 = fit_power_law(zipf2, 1, 500, FitMethod::regression);
    CHECK(std::abs(f2.exponent - 2.0) <= 1e-9);
}

TEST_CASE("fit_power_law window and domain errors") {
    std::vector<std::pair<std::int64_t, double>> curve;
    for (std::int64_t k = 1; k <= 20; ++k)
        curve.emplace_back(k, 10.0 / static_cast<double>(k));

    CHECK_THROWS_AS(fit_power_law(curve, 1, 5, FitMethod::regression), fit_error);

    auto bad = curve;
    bad[3].second = -1.0;
    CHECK_THROWS_AS(fit_power_law(bad, 1, 20, FitMethod::regression), config_error);
}

TEST_CASE("Hill estimator recovers the tail index of Pareto samples") {
    const auto xs = testutil::pareto_samples(1.5, 1.0, 10000, 2024);
    auto rs = rank_size(std::vector<double>(xs.begin(), xs.end()));
    // rank_size doubles the values; halve them back to raw samples
    for (auto& [rank, size] : rs) size /= 2.0;

    const auto fit = fit_power_law(rs, 1, static_cast<std::int64_t>(rs.size()), FitMethod::mle);
    CHECK(std::abs(fit.exponent - 1.5) <= 0.05);
    CHECK(fit.mle_rank_exponent == doctest::Approx(1.0 / (fit.exponent - 1.0)).epsilon(1e-12));
}

TEST_CASE("regression and Hill agree within 10% on large Pareto samples") {
    const auto xs = testutil::pareto_samples(2.0, 1.0, 20000, 77);
    auto rs = rank_size(std::vector<double>(xs.begin(), xs.end()));
    for (auto& [rank, size] : rs) size /= 2.0;

    const auto mle = fit_power_law(rs, 1, static_cast<std::int64_t>(rs.size()), FitMethod::mle);
    // the rank-size slope of a Pareto(alpha) sample is 1/alpha
    const auto reg =
        fit_power_law(rs, 10, static_cast<std::int64_t>(rs.size()) / 2, FitMethod::regression);
    CHECK(1.0 / reg.exponent == doctest::Approx(mle.exponent).epsilon(0.10));
}

TEST_CASE("log-binned histogram: decade example and normalization") {
    const std::vector<double> sizes{1.0, 10.0, 100.0};
    const Histogram h = log_binned_histogram(sizes, 1, false);
    REQUIRE(h.counts.size() == 3);
    CHECK(h.counts == std::vector<std::int64_t>{1, 1, 1});
    CHECK(h.bin_edges.front() == doctest::Approx(1.0));
    CHECK(h.bin_edges[1] == doctest::Approx(10.0));

    Xoshiro256pp rng(704);
    std::vector<double> data(5000);
    for (auto& x : data) x = std::exp(rng.uniform(0.0, 6.0));
    const Histogram d = log_binned_histogram(data, 10, true);
    std::int64_t total = std::accumulate(d.counts.begin(), d.counts.end(), std::int64_t{0});
    CHECK(total == 5000); // mass conservation
    double integral = 0.0;
    for (std::size_t k = 0; k < d.counts.size(); ++k)
        integral += d.density[k] * (d.bin_edges[k + 1] - d.bin_edges[k]);
    CHECK(std::abs(integral - 1.0) <= 1e-9);
}

TEST_CASE("log-binned histogram of Pareto data has the right log-log slope") {
    const auto xs = testutil::pareto_samples(2.0, 1.0, 100000, 4242);
    const Histogram h = log_binned_histogram(xs, 10, true);

    // regression over the central decades (densities above the noise floor)
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
        if (h.counts[k] < 30) continue;
        const double mid = std::sqrt(h.bin_edges[k] * h.bin_edges[k + 1]);
        if (mid > 30.0) continue;
        lx.push_back(std::log(mid));
        ly.push_back(std::log(h.density[k]));
    }
    REQUIRE(lx.size() >= 5);
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    // density of Pareto(2) falls as x^-3
    CHECK(slope == doctest::Approx(-3.0).epsilon(0.05));
}

TEST_CASE("log-binned histogram rejects bad input") {
    CHECK_THROWS_AS(log_binned_histogram({}, 10, false), config_error);
    const std::vector<double> bad{1.0, -2.0};
    CHECK_THROWS_AS(log_binned_histogram(bad, 10, false), config_error);
    const std::vector<double> ok{1.0, 2.0};
    CHECK_THROWS_AS(log_binned_histogram(ok, 0, false), config_error);
}

TEST_CASE("track_firm returns the recorded trajectory only for the tracked id") {
    StationaryRecord rec;
    rec.tracked_firm = 3;
    rec.trajectory = {{10, 5.0, 1}, {11, 5.1, 2}};
    CHECK(track_firm(rec, 3).size() == 2);
    CHECK_THROWS_AS(track_firm(rec, 4), recorder_error);

    StationaryRecord none;
    CHECK_THROWS_AS(track_firm(none, 0), recorder_error);
}

TEST_CASE("mean_rank_size averages ranked snapshots") {
    StationaryRecord rec;
    rec.snapshots.push_back({0, {1.0, 3.0}});
    rec.snapshots.push_back({1, {5.0, 1.0}});
    const auto mrs = mean_rank_size(rec);
    REQUIRE(mrs.size() == 2);
    CHECK(mrs[0] == std::pair<std::int64_t, double>{1, (6.0 + 10.0) / 2.0});
    CHECK(mrs[1] == std::pair<std::int64_t, double>{2, (2.0 + 2.0) / 2.0});

    CHECK_THROWS_AS(mean_rank_size(StationaryRecord{}), empty_record_error);
}
