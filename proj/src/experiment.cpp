#include "pmkt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "pmkt/compensated.hpp"
#include "pmkt/errors.hpp"

namespace pmkt {

StationaryRecord run_experiment(const MarketConfig& config, const RecorderSet& recorders) {
    StationaryRecord rec = run(config, recorders);
    if (rec.snapshots.empty() && recorders.snapshots) {
        // Zero-sample protocols still expose the burn-in end state.
        rec.snapshots.push_back({rec.final_state.time, rec.final_state.radii});
    }
    return rec;
}

StationaryRecord run_experiment(const MarketConfig& config) {
    return run_experiment(config, RecorderSet{});
}

void SweepSpec::validate() const {
    base.validate();
    if (beta_values.empty()) throw config_error("beta_values must be non-empty");
    for (std::size_t i = 1; i < beta_values.size(); ++i)
        if (!(beta_values[i] > beta_values[i - 1]))
            throw config_error("beta_values must be strictly increasing");
    for (double b : beta_values)
        if (!(b >= 0.0)) throw config_error("beta values must be >= 0");
    if (replicates < 1) throw config_error("replicates must be >= 1");
    if (snapshot_thin < 1) throw config_error("snapshot_thin must be >= 1");
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t beta_index,
                             std::int32_t replicate) {
    return mix_seed(base_seed, static_cast<std::uint64_t>(beta_index),
                    static_cast<std::uint64_t>(replicate));
}

std::vector<double> log_spaced(double lo, double hi, std::int32_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw config_error("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::int32_t k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] = lo * std::exp(step * static_cast<double>(k));
    out.front() = lo;
    out.back() = hi;
    return out;
}

namespace {

ReplicateResult run_replicate(const SweepSpec& spec, std::size_t beta_index,
                              std::int32_t replicate) {
    ReplicateResult res;
    res.seed = replicate_seed(spec.base.seed, beta_index, replicate);

    MarketConfig cfg = spec.base;
    cfg.beta = spec.beta_values[beta_index];
    cfg.seed = res.seed;

    RecorderSet recorders;
    recorders.snapshot_thin = spec.snapshot_thin;

    const StationaryRecord rec = run_experiment(cfg, recorders);

    if (!rec.correlation.empty()) {
        const CorrelationStats stats = pair_correlation_stationary(rec.correlation);
        res.mean_c = stats.mean;
        res.stderr_c = stats.std_error;
        res.correlation_samples = stats.count;
    }
    res.excluded = rec.degenerate_correlation_samples;
    const double window = static_cast<double>(cfg.sample_steps) *
                          static_cast<double>(cfg.n_firms);
    res.respawn_rate =
        window > 0.0 ? static_cast<double>(rec.respawns_in_window) / window : 0.0;
    res.mean_total_overlap = rec.mean_total_overlap;
    res.mean_max_share = rec.mean_max_share;

    for (const auto& [rank, size] : mean_rank_size(rec)) {
        (void)rank;
        res.rank_mean_sizes.push_back(size);
    }
    for (const auto& snap : rec.snapshots)
        for (double r : snap.radii) res.pooled_sizes.push_back(2.0 * r);
    return res;
}

double mean_of(const std::vector<double>& xs) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return xs.empty() ? 0.0 : s.value() / static_cast<double>(xs.size());
}

} // namespace

SweepResult beta_sweep(const SweepSpec& spec) {
    spec.validate();

    const std::size_t n_beta = spec.beta_values.size();
    const auto n_rep = static_cast<std::size_t>(spec.replicates);
    std::vector<ReplicateResult> cells(n_beta * n_rep);

    // Independent jobs pulled off a shared counter; every result lands in
    // its preassigned slot, so aggregation below is identical for any
    // thread count or scheduling order.
    const std::size_t n_jobs = cells.size();
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t n_threads =
        std::min<std::size_t>(spec.threads > 0 ? static_cast<std::size_t>(spec.threads) : hw,
                              n_jobs);

    std::atomic<std::size_t> next_job{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t job = next_job.fetch_add(1);
            if (job >= n_jobs) return;
            const std::size_t bi = job / n_rep;
            const auto rep = static_cast<std::int32_t>(job % n_rep);
            try {
                cells[job] = run_replicate(spec, bi, rep);
            } catch (const std::exception& e) {
                cells[job].seed = replicate_seed(spec.base.seed, bi, rep);
                cells[job].error = e.what();
            }
        }
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult result;
    result.beta_values = spec.beta_values;
    result.replicates = spec.replicates;
    result.rows.resize(n_beta);
    for (std::size_t bi = 0; bi < n_beta; ++bi) {
        BetaResult& row = result.rows[bi];
        row.beta = spec.beta_values[bi];
        row.replicates.assign(cells.begin() + static_cast<std::ptrdiff_t>(bi * n_rep),
                              cells.begin() + static_cast<std::ptrdiff_t>((bi + 1) * n_rep));

        std::vector<double> means, overlaps, shares, respawns;
        for (const auto& rep : row.replicates) {
            if (!rep.error.empty()) continue;
            means.push_back(rep.mean_c);
            overlaps.push_back(rep.mean_total_overlap);
            shares.push_back(rep.mean_max_share);
            respawns.push_back(rep.respawn_rate);
            row.excluded += rep.excluded;
        }
        row.replicates_ok = static_cast<std::int32_t>(means.size());
        if (means.empty()) continue;

        row.mean_c = mean_of(means);
        if (means.size() > 1) {
            double ss = 0.0;
            for (double m : means) ss += (m - row.mean_c) * (m - row.mean_c);
            row.stderr_c = std::sqrt(ss / (static_cast<double>(means.size()) *
                                           (static_cast<double>(means.size()) - 1.0)));
        } else {
            row.stderr_c = row.replicates.front().stderr_c;
        }
        row.mean_total_overlap = mean_of(overlaps);
        row.mean_max_share = mean_of(shares);
        row.mean_respawn_rate = mean_of(respawns);
    }
    return result;
}

MinCorrelationPoint find_min_correlation_beta(const SweepResult& result) {
    std::vector<std::pair<double, double>> curve;
    for (const auto& row : result.rows)
        if (row.replicates_ok > 0) curve.emplace_back(row.beta, row.mean_c);
    if (curve.size() < 3)
        throw config_error("find_min_correlation_beta: need at least 3 usable grid points");

    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].second < curve[best].second) best = i; // ties keep smaller beta

    MinCorrelationPoint out;
    out.beta_star = curve[best].first;
    out.c_star = curve[best].second;
    out.index = best;
    out.interior = best > 0 && best + 1 < curve.size();
    out.curve = std::move(curve);
    return out;
}

MinCorrelationPoint refine_min_correlation_beta(const SweepSpec& spec, const SweepResult& result,
                                                std::int32_t depth) {
    MinCorrelationPoint best = find_min_correlation_beta(result);
    if (depth <= 0 || !best.interior) return best;

    auto evaluate = [&spec](double beta) {
        SweepSpec probe = spec;
        probe.beta_values = {beta};
        const SweepResult r = beta_sweep(probe);
        return r.rows.front().mean_c;
    };

    // Geometric midpoints of the bracketing intervals, one pass per depth.
    double lo = best.curve[best.index - 1].first;
    double hi = best.curve[best.index + 1].first;
    double b_star = best.beta_star;
    double c_star = best.c_star;
    for (std::int32_t d = 0; d < depth; ++d) {
        const double left = std::sqrt(lo * b_star);
        const double right = std::sqrt(b_star * hi);
        const double c_left = evaluate(left);
        const double c_right = evaluate(right);
        best.curve.emplace_back(left, c_left);
        best.curve.emplace_back(right, c_right);
        if (c_left < c_star && c_left <= c_right) {
            hi = b_star;
            b_star = left;
            c_star = c_left;
        } else if (c_right < c_star) {
            lo = b_star;
            b_star = right;
            c_star = c_right;
        } else {
            lo = left;
            hi = right;
        }
    }
    std::sort(best.curve.begin(), best.curve.end());
    best.beta_star = b_star;
    best.c_star = c_star;
    for (std::size_t i = 0; i < best.curve.size(); ++i)
        if (best.curve[i].first == b_star) best.index = i;
    return best;
}

} // namespace pmkt
