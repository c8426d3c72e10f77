#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmkt/record.hpp"

namespace pmkt {

/// Instantaneous pair correlation of each firm's radius with its right
/// neighbor's radius:
///
///   [ mean(r_i * r_k(i)) - mean(r)^2 ] / [ mean(r^2) - mean(r)^2 ]
///
/// Returns nullopt for a degenerate population (radius variance below
/// 1e-12 relative to the mean square); such samples are excluded from the
/// stationary average and counted separately.
std::optional<double> pair_correlation_instant(std::span<const double> radii,
                                               std::span<const std::int32_t> neighbor_of);

struct CorrelationStats {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t count = 0;
};

/// Arithmetic mean and standard error over the non-degenerate samples.
/// Throws empty_record_error when no samples exist.
CorrelationStats pair_correlation_stationary(std::span<const CorrelationSample> samples);

/// Sizes S = 2r sorted descending; ranks start at 1; equal sizes keep input
/// order.
std::vector<std::pair<std::int64_t, double>> rank_size(std::span<const double> radii);

enum class FitMethod { regression, mle };

struct PowerLawFit {
    double exponent = 0.0;  // |slope| of log(size) vs log(rank), or Hill tail index
    double intercept = 0.0; // log-log intercept (regression)
    double r_squared = 0.0;
    std::int64_t rank_lo = 0;
    std::int64_t rank_hi = 0;
    FitMethod method = FitMethod::regression;
    /// MLE only: rank-size exponent implied by the tail index, 1/(alpha-1).
    double mle_rank_exponent = 0.0;
};

/// Fits sizes vs ranks over the window [rank_lo, rank_hi].
///
/// regression: least-squares line through (log rank, log size); exponent is
/// the slope magnitude. mle: continuous Hill estimator
/// alpha = n / sum(log(s_i / s_min)) over the window's sizes, with the
/// rank-exponent conversion 1/(alpha-1) reported alongside; r_squared is the
/// log-log regression goodness on the same window, kept as a descriptive
/// number. Throws fit_error for windows with fewer than 10 points or no
/// spread, config_error for non-positive sizes.
PowerLawFit fit_power_law(std::span<const std::pair<std::int64_t, double>> curve,
                          std::int64_t rank_lo, std::int64_t rank_hi,
                          FitMethod method = FitMethod::regression);

/// Default fit window for an N-firm rank-size curve: ranks 5 .. ceil(0.8*N),
/// skipping the few largest firms and the floor-pinned tail.
std::pair<std::int64_t, std::int64_t> default_fit_window(std::int64_t n_ranks);

struct Histogram {
    std::vector<double> bin_edges; // nbins + 1, strictly increasing, log spaced
    std::vector<std::int64_t> counts;
    std::vector<double> density; // counts / (total * width); empty unless requested
    bool normalized = false;
};

/// Histogram with logarithmically spaced bins covering [min, max] of the
/// data; bin k spans [lo*10^(k/bpd), lo*10^((k+1)/bpd)). Throws config_error
/// on empty input, non-positive sizes, or bins_per_decade < 1.
Histogram log_binned_histogram(std::span<const double> sizes, std::int32_t bins_per_decade,
                               bool density);

/// Recorded trajectory of one firm, (time, size, age) per sample; age == 0
/// marks respawn events. Throws recorder_error unless this exact firm was
/// tracked.
std::vector<TrajectoryPoint> track_firm(const StationaryRecord& record, std::int32_t id);

/// Mean size per rank across all snapshots: each snapshot is ranked
/// descending, then sizes are averaged rank-wise. The stationary rank-size
/// curve written by the CLI. Throws empty_record_error without snapshots.
std::vector<std::pair<std::int64_t, double>> mean_rank_size(const StationaryRecord& record);

} // namespace pmkt
