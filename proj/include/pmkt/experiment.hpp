#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmkt/observables.hpp"
#include "pmkt/record.hpp"

namespace pmkt {

/// One run with the standard recorder set (correlation, snapshots, optional
/// tracked firm). When sample_steps == 0 the record still carries a single
/// snapshot of the burn-in end state so size observables stay available.
StationaryRecord run_experiment(const MarketConfig& config, const RecorderSet& recorders);
StationaryRecord run_experiment(const MarketConfig& config);

/// A beta grid swept with fixed replicate seeds per point.
struct SweepSpec {
    MarketConfig base;
    std::vector<double> beta_values; // strictly increasing, non-empty
    std::int32_t replicates = 1;
    std::int32_t snapshot_thin = 10; // sweeps thin snapshots; see RecorderSet
    std::int32_t threads = 0;        // 0 = hardware concurrency

    void validate() const;
};

/// Seed of replicate `replicate` at grid position `beta_index`:
/// mix_seed(base_seed, beta_index, replicate). Stable contract.
std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t beta_index,
                             std::int32_t replicate);

/// n log-spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::int32_t n);

struct ReplicateResult {
    std::uint64_t seed = 0;
    double mean_c = 0.0;
    double stderr_c = 0.0;
    std::int64_t correlation_samples = 0;
    std::int64_t excluded = 0;
    double respawn_rate = 0.0; // respawns per firm per step over the window
    double mean_total_overlap = 0.0;
    double mean_max_share = 0.0;
    std::vector<double> rank_mean_sizes; // descending; mean size per rank
    std::vector<double> pooled_sizes;    // thinned snapshot sizes, time order
    std::string error;                   // non-empty if the run failed
};

struct BetaResult {
    double beta = 0.0;
    double mean_c = 0.0;   // mean of replicate means
    double stderr_c = 0.0; // dispersion of replicate means (or the single run's)
    std::int32_t replicates_ok = 0;
    std::int64_t excluded = 0;
    double mean_respawn_rate = 0.0;
    double mean_total_overlap = 0.0;
    double mean_max_share = 0.0;
    std::vector<ReplicateResult> replicates;
};

struct SweepResult {
    std::vector<double> beta_values;
    std::int32_t replicates = 0;
    std::vector<BetaResult> rows; // same order as beta_values
};

/// Runs every (beta, replicate) cell as an independent job on a small worker
/// pool. Results land in preassigned slots and are aggregated in grid order,
/// so the outcome is identical for any thread count. A failed cell is
/// recorded in its slot, not fatal to the sweep.
SweepResult beta_sweep(const SweepSpec& spec);

struct MinCorrelationPoint {
    double beta_star = 0.0;
    double c_star = 0.0;
    std::size_t index = 0;
    bool interior = false; // false: minimum sits on a grid endpoint
    std::vector<std::pair<double, double>> curve; // the (beta, mean C) evidence
};

/// Grid point with minimal mean C; ties resolve toward smaller beta.
/// An endpoint minimum is returned flagged (interior == false).
/// Requires at least 3 usable grid points.
MinCorrelationPoint find_min_correlation_beta(const SweepResult& result);

/// Optional refinement: for `depth` passes, evaluates the midpoints of the
/// two intervals bracketing the current minimum (same replicate protocol)
/// and keeps the best point seen. depth == 0 returns the grid answer.
MinCorrelationPoint refine_min_correlation_beta(const SweepSpec& spec, const SweepResult& result,
                                                std::int32_t depth);

} // namespace pmkt
