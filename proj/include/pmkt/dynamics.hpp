#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmkt/arc.hpp"
#include "pmkt/rng.hpp"

namespace pmkt {

/// All model and protocol parameters. Defaults reproduce the reference
/// protocol: 500 firms on a market of length 3e5, 1% growth, overlap
/// penalty beta = 2, profitability floor 2, initial radii in [2, 5),
/// 1e5 burn-in updates and 1e6 recorded updates sampled every 10th step.
struct MarketConfig {
    std::int32_t n_firms = 500;
    double circumference = 3.0e5;
    double alpha = 0.01; // growth factor
    double beta = 2.0;   // competition factor
    double r_min = 2.0;  // profitability floor r_a; bankruptcy below this
    double r_max = 5.0;  // upper bound r_b of the initial radius draw
    std::int64_t burn_in_steps = 100000;
    std::int64_t sample_steps = 1000000;
    std::int32_t sample_stride = 10;
    std::uint64_t seed = 1;

    /// Throws config_error on any violated invariant
    /// (n >= 1, L > 0, alpha > 0, beta >= 0, 0 < r_min < r_max <= L/2, stride >= 1).
    void validate() const;
};

struct Firm {
    std::int32_t id = 0; // stable across respawns
    Arc arc;
    std::int64_t age = 0; // steps since (re)birth
};

/// Full simulation state at one time step. A value type: step() is a pure
/// function of (state, config), and states can be copied or sent across
/// threads freely.
struct MarketState {
    std::vector<double> centers;
    std::vector<double> radii;
    std::vector<std::int64_t> ages;
    double circumference = 1.0;
    std::int64_t time = 0;
    std::int64_t respawn_count = 0;
    std::int64_t clamp_count = 0; // radius cap at L/2 fired (never at default parameters)
    Xoshiro256pp rng{0};

    std::int32_t n() const { return static_cast<std::int32_t>(radii.size()); }
    Firm firm(std::int32_t i) const {
        return Firm{i, Arc{centers[static_cast<std::size_t>(i)],
                           radii[static_cast<std::size_t>(i)], circumference},
                    ages[static_cast<std::size_t>(i)]};
    }
    std::vector<Firm> firms() const;
    std::vector<Arc> arcs() const;

    friend bool operator==(const MarketState&, const MarketState&) = default;
};

/// Fresh population: centers uniform on [0, L), radii uniform on [r_min, r_max),
/// drawn per firm in index order (center first, then radius). Deterministic
/// in (config, seed).
MarketState init_state(const MarketConfig& config);

/// Proposed radii r_i + alpha*r_i - beta*Omega_i, all overlaps taken from the
/// time-t state (fully synchronous). Proposals may be negative; no clamping
/// or bankruptcy handling here.
std::vector<double> growth_step(const MarketState& state, const MarketConfig& config);

/// Applies proposals: survivors (proposed >= r_min) keep their center, adopt
/// min(proposed, L/2) and age by one; the rest are respawned at a uniform
/// center with a fresh uniform radius, in ascending index order so RNG
/// consumption is deterministic. Advances time by one.
MarketState death_birth_step(const MarketState& state, std::span<const double> proposed,
                             const MarketConfig& config);

/// One synchronous update: death_birth_step(state, growth_step(state)).
MarketState step(const MarketState& state, const MarketConfig& config);

} // namespace pmkt
