#include "pmkt/observables.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "pmkt/compensated.hpp"
#include "pmkt/errors.hpp"
#include "pmkt/kernels.hpp"

namespace pmkt {

std::optional<double> pair_correlation_instant(std::span<const double> radii,
                                               std::span<const std::int32_t> neighbor_of) {
    const std::size_t n = radii.size();
    assert(neighbor_of.size() == n);
    if (n < 2) throw population_error("pair_correlation_instant: need at least two firms");

    const double inv_n = 1.0 / static_cast<double>(n);
    const double mean = kernels::reduce_sum(radii) * inv_n;
    const double mean_sq = kernels::reduce_dot(radii, radii) * inv_n;
    const double variance = mean_sq - mean * mean;

    // Degenerate population: variance indistinguishable from zero at the
    // scale of the second moment.
    if (!(variance > 1e-12 * mean_sq)) return std::nullopt;

    const double cross = kernels::gather_dot(radii, neighbor_of) * inv_n;
    return (cross - mean * mean) / variance;
}

CorrelationStats pair_correlation_stationary(std::span<const CorrelationSample> samples) {
    if (samples.empty())
        throw empty_record_error("pair_correlation_stationary: no usable samples");

    CompensatedSum sum;
    for (const auto& s : samples) sum.add(s.value);
    const auto n = static_cast<double>(samples.size());
    const double mean = sum.value() / n;

    CompensatedSum sq;
    for (const auto& s : samples) sq.add((s.value - mean) * (s.value - mean));
    const double std_error =
        samples.size() > 1 ? std::sqrt(sq.value() / (n * (n - 1.0))) : 0.0;

    return {mean, std_error, static_cast<std::int64_t>(samples.size())};
}

std::vector<std::pair<std::int64_t, double>> rank_size(std::span<const double> radii) {
    std::vector<std::pair<std::int64_t, double>> out(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i)
        out[i] = {0, 2.0 * radii[i]};
    // stable: equal sizes keep input order
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].first = static_cast<std::int64_t>(i) + 1;
    return out;
}

std::pair<std::int64_t, std::int64_t> default_fit_window(std::int64_t n_ranks) {
    const std::int64_t hi = (n_ranks * 4 + 4) / 5; // ceil(0.8 n)
    return {std::min<std::int64_t>(5, n_ranks), std::max<std::int64_t>(1, hi)};
}

PowerLawFit fit_power_law(std::span<const std::pair<std::int64_t, double>> curve,
                          std::int64_t rank_lo, std::int64_t rank_hi, FitMethod method) {
    if (rank_lo > rank_hi) throw fit_error("fit_power_law: empty rank window");

    std::vector<double> lx, ly, sizes;
    for (const auto& [rank, size] : curve) {
        if (rank < rank_lo || rank > rank_hi) continue;
        if (!(size > 0.0))
            throw config_error("fit_power_law: non-positive size in fit window");
        lx.push_back(std::log(static_cast<double>(rank)));
        ly.push_back(std::log(size));
        sizes.push_back(size);
    }
    const std::size_t n = lx.size();
    if (n < 10) throw fit_error("fit_power_law: fewer than 10 points in window");

    // Least squares through (log rank, log size); also the descriptive
    // goodness number reported for the MLE path.
    const double nn = static_cast<double>(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= nn;
    my /= nn;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx;
        const double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw fit_error("fit_power_law: degenerate window (no rank spread)");

    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double r_squared = 1.0;
    if (syy > 0.0) {
        r_squared = (sxy * sxy) / (sxx * syy);
        r_squared = std::clamp(r_squared, 0.0, 1.0);
    }

    PowerLawFit fit;
    fit.rank_lo = rank_lo;
    fit.rank_hi = rank_hi;
    fit.intercept = intercept;
    fit.r_squared = r_squared;
    fit.method = method;

    if (method == FitMethod::regression) {
        fit.exponent = std::abs(slope);
        return fit;
    }

    // Continuous Hill estimator over the window's sizes.
    const double s_min = *std::min_element(sizes.begin(), sizes.end());
    CompensatedSum logs;
    for (double s : sizes) logs.add(std::log(s / s_min));
    if (!(logs.value() > 0.0)) throw fit_error("fit_power_law: no size spread for Hill estimate");
    fit.exponent = nn / logs.value();
    fit.mle_rank_exponent = 1.0 / (fit.exponent - 1.0);
    return fit;
}

Histogram log_binned_histogram(std::span<const double> sizes, std::int32_t bins_per_decade,
                               bool density) {
    if (sizes.empty()) throw config_error("log_binned_histogram: empty input");
    if (bins_per_decade < 1) throw config_error("log_binned_histogram: bins_per_decade < 1");

    double lo = sizes[0], hi = sizes[0];
    for (double s : sizes) {
        if (!(s > 0.0)) throw config_error("log_binned_histogram: non-positive size");
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }

    const double bpd = static_cast<double>(bins_per_decade);
    const auto nbins = static_cast<std::size_t>(
        std::floor(std::log10(hi / lo) * bpd + 1e-9) + 1.0);

    Histogram h;
    h.bin_edges.resize(nbins + 1);
    for (std::size_t k = 0; k <= nbins; ++k) {
        double edge = lo * std::pow(10.0, static_cast<double>(k) / bpd);
        if (k > 0 && edge <= h.bin_edges[k - 1]) // keep edges strictly increasing
            edge = std::nextafter(h.bin_edges[k - 1], INFINITY);
        h.bin_edges[k] = edge;
    }

    h.counts.assign(nbins, 0);
    for (double s : sizes) {
        auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), s);
        std::size_t idx = it == h.bin_edges.begin()
                              ? 0
                              : static_cast<std::size_t>(it - h.bin_edges.begin()) - 1;
        if (idx >= nbins) idx = nbins - 1; // s == top edge
        h.counts[idx] += 1;
    }

    if (density) {
        h.normalized = true;
        h.density.resize(nbins);
        const auto total = static_cast<double>(sizes.size());
        for (std::size_t k = 0; k < nbins; ++k) {
            const double width = h.bin_edges[k + 1] - h.bin_edges[k];
            h.density[k] = static_cast<double>(h.counts[k]) / (total * width);
        }
    }
    return h;
}

std::vector<TrajectoryPoint> track_firm(const StationaryRecord& record, std::int32_t id) {
    if (!record.tracked_firm || *record.tracked_firm != id)
        throw recorder_error("track_firm: firm " + std::to_string(id) + " was not recorded");
    return record.trajectory;
}

std::vector<std::pair<std::int64_t, double>> mean_rank_size(const StationaryRecord& record) {
    if (record.snapshots.empty())
        throw empty_record_error("mean_rank_size: record holds no snapshots");

    const std::size_t n = record.snapshots.front().radii.size();
    std::vector<CompensatedSum> acc(n);
    std::vector<double> sorted;
    for (const auto& snap : record.snapshots) {
        sorted.assign(snap.radii.begin(), snap.radii.end());
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        for (std::size_t i = 0; i < n; ++i) acc[i].add(2.0 * sorted[i]);
    }

    const auto count = static_cast<double>(record.snapshots.size());
    std::vector<std::pair<std::int64_t, double>> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = {static_cast<std::int64_t>(i) + 1, acc[i].value() / count};
    return out;
}

} // namespace pmkt
