#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmkt/dynamics.hpp"

namespace pmkt {

/// One instantaneous pair-correlation value (see observables.hpp).
struct CorrelationSample {
    std::int64_t time = 0;
    double value = 0.0; // in [-1, 1] whenever defined
};

/// Radii of the whole population at one sampled step.
struct SizeSnapshot {
    std::int64_t time = 0;
    std::vector<double> radii;
};

/// One sampled point of a tracked firm. age == 0 marks a step at which the
/// firm had just been respawned.
struct TrajectoryPoint {
    std::int64_t time = 0;
    double size = 0.0; // selling area 2r
    std::int64_t age = 0;
};

/// Which measurements run() takes at each sampled step.
struct RecorderSet {
    bool correlation = true;
    bool snapshots = true;
    /// Keep every k-th sampled snapshot only. Correlation is cheap and is
    /// taken at every sample; full radius snapshots dominate memory, so
    /// sweeps thin them.
    std::int32_t snapshot_thin = 1;
    std::optional<std::int32_t> track_firm;
};

/// Everything accumulated over the stationary window of one run.
struct StationaryRecord {
    MarketConfig config;

    std::vector<CorrelationSample> correlation;
    std::int64_t degenerate_correlation_samples = 0;

    std::vector<SizeSnapshot> snapshots;

    std::optional<std::int32_t> tracked_firm;
    std::vector<TrajectoryPoint> trajectory;

    std::int64_t sample_count = 0;
    std::int64_t respawn_count = 0;          // total, including burn-in
    std::int64_t respawns_in_window = 0;     // during the sampling window only
    std::int64_t clamp_count = 0;

    double mean_total_overlap = 0.0; // stationary mean of sum_i Omega_i
    double mean_max_share = 0.0;     // stationary mean of max_i S_i / sum_j S_j

    MarketState final_state;
};

/// Runs burn_in_steps updates unrecorded, then sample_steps updates invoking
/// the recorders every sample_stride steps. Deterministic in (config,
/// recorders): bit-identical records for identical inputs.
StationaryRecord run(const MarketConfig& config, const RecorderSet& recorders);

} // namespace pmkt
