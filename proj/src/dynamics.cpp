#include "pmkt/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "pmkt/compensated.hpp"
#include "pmkt/errors.hpp"
#include "pmkt/kernels.hpp"
#include "pmkt/neighbor.hpp"
#include "pmkt/observables.hpp"
#include "pmkt/overlap.hpp"
#include "pmkt/record.hpp"

namespace pmkt {

void MarketConfig::validate() const {
    if (n_firms < 1) throw config_error("n_firms must be >= 1");
    if (!(circumference > 0.0)) throw config_error("circumference must be > 0");
    if (!(alpha > 0.0)) throw config_error("alpha must be > 0");
    if (!(beta >= 0.0)) throw config_error("beta must be >= 0");
    if (!(r_min > 0.0)) throw config_error("r_min must be > 0");
    if (!(r_max > r_min)) throw config_error("r_max must be > r_min");
    if (!(r_max <= circumference / 2.0))
        throw config_error("r_max must be <= circumference / 2");
    if (burn_in_steps < 0) throw config_error("burn_in_steps must be >= 0");
    if (sample_steps < 0) throw config_error("sample_steps must be >= 0");
    if (sample_stride < 1) throw config_error("sample_stride must be >= 1");
}

std::vector<Arc> MarketState::arcs() const {
    std::vector<Arc> out(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i)
        out[i] = Arc{centers[i], radii[i], circumference};
    return out;
}

std::vector<Firm> MarketState::firms() const {
    std::vector<Firm> out(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i)
        out[i] = firm(static_cast<std::int32_t>(i));
    return out;
}

MarketState init_state(const MarketConfig& config) {
    config.validate();
    const auto n = static_cast<std::size_t>(config.n_firms);

    MarketState st;
    st.circumference = config.circumference;
    st.centers.resize(n);
    st.radii.resize(n);
    st.ages.assign(n, 0);
    st.rng = Xoshiro256pp(config.seed);
    for (std::size_t i = 0; i < n; ++i) {
        st.centers[i] = st.rng.uniform(0.0, config.circumference);
        st.radii[i] = st.rng.uniform(config.r_min, config.r_max);
    }
    return st;
}

namespace {

/// In-place stepping engine; owns the scratch buffers so the run loop does
/// no per-step allocation. step() and run() both go through here, which
/// keeps them bit-identical.
class Simulator {
public:
    Simulator(const MarketConfig& config, MarketState state)
        : cfg_(config), st_(std::move(state)) {
        const std::size_t n = st_.radii.size();
        omega_.resize(n);
        proposed_.resize(n);
    }

    void step_once() {
        total_overlaps(st_.centers, st_.radii, st_.circumference, omega_, ws_);
        kernels::growth_update(st_.radii, omega_, cfg_.alpha, cfg_.beta, proposed_);
        apply_death_birth(proposed_);
    }

    /// Respawns consume RNG draws in ascending index order (center, then
    /// radius), so trajectories are reproducible.
    void apply_death_birth(std::span<const double> proposed) {
        const double half = st_.circumference / 2.0;
        const std::size_t n = st_.radii.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double p = proposed[i];
            if (p < cfg_.r_min) {
                st_.centers[i] = st_.rng.uniform(0.0, st_.circumference);
                st_.radii[i] = st_.rng.uniform(cfg_.r_min, cfg_.r_max);
                st_.ages[i] = 0;
                st_.respawn_count += 1;
            } else if (p > half) {
                st_.radii[i] = half;
                st_.ages[i] += 1;
                st_.clamp_count += 1;
            } else {
                st_.radii[i] = p;
                st_.ages[i] += 1;
            }
        }
        st_.time += 1;
    }

    MarketState& state() { return st_; }
    std::span<const double> last_omega() const { return omega_; }
    OverlapWorkspace& workspace() { return ws_; }

private:
    const MarketConfig& cfg_;
    MarketState st_;
    OverlapWorkspace ws_;
    std::vector<double> omega_;
    std::vector<double> proposed_;
};

} // namespace

std::vector<double> growth_step(const MarketState& state, const MarketConfig& config) {
    const std::size_t n = state.radii.size();
    std::vector<double> omega(n), proposed(n);
    OverlapWorkspace ws;
    total_overlaps(state.centers, state.radii, state.circumference, omega, ws);
    kernels::growth_update(state.radii, omega, config.alpha, config.beta, proposed);
    return proposed;
}

MarketState death_birth_step(const MarketState& state, std::span<const double> proposed,
                             const MarketConfig& config) {
    assert(proposed.size() == state.radii.size());
    Simulator sim(config, state);
    sim.apply_death_birth(proposed);
    return std::move(sim.state());
}

MarketState step(const MarketState& state, const MarketConfig& config) {
    Simulator sim(config, state);
    sim.step_once();
    return std::move(sim.state());
}

StationaryRecord run(const MarketConfig& config, const RecorderSet& recorders) {
    config.validate();
    if (recorders.snapshot_thin < 1)
        throw config_error("snapshot_thin must be >= 1");
    if (recorders.track_firm &&
        (*recorders.track_firm < 0 || *recorders.track_firm >= config.n_firms))
        throw config_error("tracked firm id out of range");

    StationaryRecord rec;
    rec.config = config;
    rec.tracked_firm = recorders.track_firm;

    Simulator sim(config, init_state(config));
    for (std::int64_t t = 0; t < config.burn_in_steps; ++t) sim.step_once();

    const std::int64_t respawns_at_window_start = sim.state().respawn_count;
    const bool do_corr = recorders.correlation && config.n_firms >= 2;

    CompensatedSum overlap_acc;
    CompensatedSum share_acc;
    std::vector<double> omega_now(static_cast<std::size_t>(config.n_firms));
    std::vector<std::int32_t> neighbors;

    for (std::int64_t k = 1; k <= config.sample_steps; ++k) {
        sim.step_once();
        if (k % config.sample_stride != 0) continue;

        MarketState& st = sim.state();
        rec.sample_count += 1;

        if (do_corr) {
            neighbors = nearest_right_neighbors(st.centers, st.circumference);
            if (auto c = pair_correlation_instant(st.radii, neighbors))
                rec.correlation.push_back({st.time, *c});
            else
                rec.degenerate_correlation_samples += 1;
        }

        total_overlaps(st.centers, st.radii, st.circumference, omega_now, sim.workspace());
        overlap_acc.add(kernels::reduce_sum(omega_now));
        // max_i S_i / sum_j S_j; the factor 2 cancels.
        share_acc.add(kernels::reduce_max(st.radii) / kernels::reduce_sum(st.radii));

        if (recorders.snapshots && (rec.sample_count - 1) % recorders.snapshot_thin == 0)
            rec.snapshots.push_back({st.time, st.radii});

        if (recorders.track_firm) {
            const auto id = static_cast<std::size_t>(*recorders.track_firm);
            rec.trajectory.push_back({st.time, 2.0 * st.radii[id], st.ages[id]});
        }
    }

    if (rec.sample_count > 0) {
        rec.mean_total_overlap = overlap_acc.value() / static_cast<double>(rec.sample_count);
        rec.mean_max_share = share_acc.value() / static_cast<double>(rec.sample_count);
    }
    rec.respawn_count = sim.state().respawn_count;
    rec.respawns_in_window = sim.state().respawn_count - respawns_at_window_start;
    rec.clamp_count = sim.state().clamp_count;
    rec.final_state = std::move(sim.state());
    return rec;
}

} // namespace pmkt
