#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pmkt::cli {

// Exit code contract: 0 success, 2 user/config error, 3 environment/IO error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_user_error = 2;
inline constexpr int exit_io_error = 3;

struct RunOptions {
    std::string config_path; // empty = defaults
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> beta;
    std::optional<std::int32_t> stride;
    std::optional<std::int32_t> track_firm;
    std::int32_t threads = 0; // accepted for interface symmetry; a run is sequential
};

/// Writes correlation.csv, snapshots.csv, ranksize.csv, histogram.csv,
/// trajectory.csv (when a firm is tracked) and manifest.json into out_dir.
int cmd_run(const RunOptions& opts, std::ostream& diag);

struct SweepOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> betas; // comma-separated list; unset = default grid
    std::int32_t replicates = 3;
    std::optional<std::int32_t> stride;
    std::int32_t threads = 0; // 0 = hardware concurrency
};

/// Default sweep grid: 16 log-spaced betas in [0.25, 16].
std::vector<double> default_beta_grid();

/// Writes c_of_beta.csv, sweep_metrics.csv, histogram_beta=<v>.csv per grid
/// point, beta_star.json and manifest.json into out_dir.
int cmd_sweep(const SweepOptions& opts, std::ostream& diag);

struct FitOptions {
    std::string csv_path; // rank,size table
    std::optional<std::int64_t> rank_lo;
    std::optional<std::int64_t> rank_hi;
    std::string method = "regression"; // or "mle"
};

/// Prints the fit as a single JSON object on `out`.
int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& diag);

} // namespace pmkt::cli
