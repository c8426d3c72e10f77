// pareto_market: spatial firm-competition simulator.
//
// Subcommands:
//   run    one experiment at fixed beta; emits plot-ready CSV tables
//   sweep  beta sweep with replicates; locates the minimum-correlation beta
//   fit    power-law fit of a rank,size table

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pmkt/cli.hpp"
#include "pmkt/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Simulator of spatially competing firms on a periodic 1-D market"};
    app.set_version_flag("--version", std::string("pareto_market ") + pmkt::version);
    app.require_subcommand(1);

    pmkt::cli::RunOptions run_opts;
    std::uint64_t seed = 0;
    double beta = 0.0;
    std::int32_t stride = 0;
    std::int32_t track = 0;

    CLI::App* run = app.add_subcommand("run", "Run one experiment and export its observables");
    run->add_option("--config", run_opts.config_path, "Config file (key = value)");
    run->add_option("--out", run_opts.out_dir, "Output directory")->required();
    auto* run_seed = run->add_option("--seed", seed, "Override the config seed");
    auto* run_beta = run->add_option("--beta", beta, "Override the competition factor");
    auto* run_stride = run->add_option("--stride", stride, "Override the sample stride");
    auto* run_track = run->add_option("--track-firm", track, "Record one firm's trajectory");
    run->add_option("--threads", run_opts.threads,
                    "Accepted for symmetry with sweep; a single run is sequential")
        ->envname("PARETO_MARKET_THREADS");

    pmkt::cli::SweepOptions sweep_opts;
    std::string betas;

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep beta and locate the correlation minimum");
    sweep->add_option("--config", sweep_opts.config_path, "Config file (key = value)");
    sweep->add_option("--out", sweep_opts.out_dir, "Output directory")->required();
    auto* sweep_seed = sweep->add_option("--seed", seed, "Override the config seed");
    auto* sweep_betas =
        sweep->add_option("--betas", betas, "Comma-separated beta grid (default: 16 log-spaced in [0.25, 16])");
    sweep->add_option("--replicates", sweep_opts.replicates, "Seeds per beta")
        ->check(CLI::PositiveNumber);
    auto* sweep_stride = sweep->add_option("--stride", stride, "Override the sample stride");
    sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0 = all cores)")
        ->envname("PARETO_MARKET_THREADS");

    pmkt::cli::FitOptions fit_opts;

    CLI::App* fit = app.add_subcommand("fit", "Fit a power law to a rank,size CSV");
    fit->add_option("csv", fit_opts.csv_path, "rank,size table")->required();
    std::int64_t rank_lo = 0, rank_hi = 0;
    auto* fit_lo = fit->add_option("--rank-lo", rank_lo, "Lowest rank in the fit window");
    auto* fit_hi = fit->add_option("--rank-hi", rank_hi, "Highest rank in the fit window");
    fit->add_option("--method", fit_opts.method, "regression | mle")
        ->check(CLI::IsMember({"regression", "mle"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pmkt::cli::exit_user_error;
    }

    if (run->parsed()) {
        if (*run_seed) run_opts.seed = seed;
        if (*run_beta) run_opts.beta = beta;
        if (*run_stride) run_opts.stride = stride;
        if (*run_track) run_opts.track_firm = track;
        return pmkt::cli::cmd_run(run_opts, std::cerr);
    }
    if (sweep->parsed()) {
        if (*sweep_seed) sweep_opts.seed = seed;
        if (*sweep_betas) sweep_opts.betas = betas;
        if (*sweep_stride) sweep_opts.stride = stride;
        return pmkt::cli::cmd_sweep(sweep_opts, std::cerr);
    }
    if (*fit_lo) fit_opts.rank_lo = rank_lo;
    if (*fit_hi) fit_opts.rank_hi = rank_hi;
    return pmkt::cli::cmd_fit(fit_opts, std::cout, std::cerr);
}
