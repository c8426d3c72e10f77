#include "pmkt/cli.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "pmkt/config_io.hpp"
#include "pmkt/errors.hpp"
#include "pmkt/experiment.hpp"
#include "pmkt/io.hpp"
#include "pmkt/observables.hpp"
#include "pmkt/version.hpp"

namespace pmkt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Streams one output file and keeps its checksum and size as it goes.
class OutputFile {
public:
    OutputFile(const fs::path& dir, std::string name)
        : name_(std::move(name)), out_(dir / name_, std::ios::binary | std::ios::trunc) {
        if (!out_) throw std::runtime_error("cannot open output file: " + (dir / name_).string());
    }

    OutputFile& operator<<(std::string_view s) {
        out_.write(s.data(), static_cast<std::streamsize>(s.size()));
        for (unsigned char c : s) {
            hash_ ^= c;
            hash_ *= 1099511628211ULL;
        }
        bytes_ += s.size();
        return *this;
    }

    OutputFile& operator<<(double v) { return *this << io::format_double(v); }
    OutputFile& operator<<(std::int64_t v) { return *this << std::to_string(v); }

    json close() {
        out_.flush();
        if (!out_) throw std::runtime_error("write failed: " + name_);
        out_.close();
        return json{{"path", name_},
                    {"bytes", bytes_},
                    {"fnv1a64", io::hex64(hash_)}};
    }

private:
    std::string name_;
    std::ofstream out_;
    std::uint64_t hash_ = 14695981039346656037ULL;
    std::size_t bytes_ = 0;
};

json config_json(const MarketConfig& cfg) {
    return json{{"n_firms", cfg.n_firms},
                {"circumference", cfg.circumference},
                {"alpha", cfg.alpha},
                {"beta", cfg.beta},
                {"r_min", cfg.r_min},
                {"r_max", cfg.r_max},
                {"burn_in_steps", cfg.burn_in_steps},
                {"sample_steps", cfg.sample_steps},
                {"sample_stride", cfg.sample_stride},
                {"seed", cfg.seed}};
}

void write_manifest(const fs::path& dir, const std::string& command, const MarketConfig& cfg,
                    const std::string& config_text, const std::string& started,
                    json outputs) {
    json manifest{{"artifact", "pareto_market"},
                  {"version", pmkt::version},
                  {"command", command},
                  {"seed", cfg.seed},
                  {"config", config_json(cfg)},
                  {"config_text", config_text},
                  {"started_utc", started},
                  {"finished_utc", io::iso8601_utc(std::chrono::system_clock::now())},
                  {"outputs", std::move(outputs)}};
    io::write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

json write_histogram_csv(const fs::path& dir, const std::string& name,
                         const std::vector<double>& sizes) {
    OutputFile f(dir, name);
    f << "bin_lo,bin_hi,count,density\n";
    if (!sizes.empty()) {
        const Histogram h = log_binned_histogram(sizes, 10, true);
        for (std::size_t k = 0; k < h.counts.size(); ++k) {
            f << h.bin_edges[k] << "," << h.bin_edges[k + 1] << "," << h.counts[k] << ","
              << h.density[k] << "\n";
        }
    }
    return f.close();
}

struct LoadedConfig {
    MarketConfig cfg;
    std::string text; // raw bytes of the config file, empty when defaults
};

LoadedConfig load_config(const std::string& path) {
    LoadedConfig lc;
    if (!path.empty()) {
        lc.text = io::read_text_file(path);
        lc.cfg = parse_market_config(lc.text, path);
    }
    return lc;
}

int run_guarded(std::ostream& diag, const char* what, auto&& body) {
    try {
        body();
        return exit_ok;
    } catch (const config_error& e) {
        diag << what << ": " << e.what() << "\n";
        return exit_user_error;
    } catch (const std::exception& e) {
        diag << what << ": " << e.what() << "\n";
        return exit_io_error;
    }
}

} // namespace

int cmd_run(const RunOptions& opts, std::ostream& diag) {
    return run_guarded(diag, "run", [&] {
        const std::string started = io::iso8601_utc(std::chrono::system_clock::now());
        LoadedConfig lc = load_config(opts.config_path);
        if (opts.seed) lc.cfg.seed = *opts.seed;
        if (opts.beta) lc.cfg.beta = *opts.beta;
        if (opts.stride) lc.cfg.sample_stride = *opts.stride;
        lc.cfg.validate();
        if (opts.track_firm && (*opts.track_firm < 0 || *opts.track_firm >= lc.cfg.n_firms))
            throw config_error("--track-firm out of range");

        RecorderSet recorders;
        recorders.track_firm = opts.track_firm;

        const fs::path dir(opts.out_dir);
        fs::create_directories(dir);

        const StationaryRecord rec = run_experiment(lc.cfg, recorders);
        json outputs = json::array();

        {
            OutputFile f(dir, "correlation.csv");
            f << "time,value\n";
            for (const auto& s : rec.correlation) f << s.time << "," << s.value << "\n";
            outputs.push_back(f.close());
        }
        {
            OutputFile f(dir, "snapshots.csv");
            f << "time,firm_id,radius,size\n";
            for (const auto& snap : rec.snapshots)
                for (std::size_t i = 0; i < snap.radii.size(); ++i)
                    f << snap.time << "," << static_cast<std::int64_t>(i) << ","
                      << snap.radii[i] << "," << 2.0 * snap.radii[i] << "\n";
            outputs.push_back(f.close());
        }
        {
            OutputFile f(dir, "ranksize.csv");
            f << "rank,size\n";
            for (const auto& [rank, size] : mean_rank_size(rec))
                f << rank << "," << size << "\n";
            outputs.push_back(f.close());
        }
        {
            std::vector<double> sizes;
            for (const auto& snap : rec.snapshots)
                for (double r : snap.radii) sizes.push_back(2.0 * r);
            outputs.push_back(write_histogram_csv(dir, "histogram.csv", sizes));
        }
        if (opts.track_firm) {
            OutputFile f(dir, "trajectory.csv");
            f << "time,size,age\n";
            for (const auto& p : rec.trajectory)
                f << p.time << "," << p.size << "," << p.age << "\n";
            outputs.push_back(f.close());
        }

        write_manifest(dir, "run", lc.cfg, lc.text, started, std::move(outputs));
        diag << "run: " << rec.sample_count << " samples, " << rec.respawn_count
             << " respawns, outputs in " << dir.string() << "\n";
    });
}

std::vector<double> default_beta_grid() { return log_spaced(0.25, 16.0, 16); }

namespace {

std::vector<double> parse_beta_list(const std::string& list) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        std::size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        const std::string_view item(list.data() + pos, comma - pos);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
            throw config_error("--betas: invalid value '" + std::string(item) + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

} // namespace

int cmd_sweep(const SweepOptions& opts, std::ostream& diag) {
    return run_guarded(diag, "sweep", [&] {
        const std::string started = io::iso8601_utc(std::chrono::system_clock::now());
        LoadedConfig lc = load_config(opts.config_path);
        if (opts.seed) lc.cfg.seed = *opts.seed;
        if (opts.stride) lc.cfg.sample_stride = *opts.stride;

        SweepSpec spec;
        spec.base = lc.cfg;
        spec.beta_values = opts.betas ? parse_beta_list(*opts.betas) : default_beta_grid();
        spec.replicates = opts.replicates;
        spec.threads = opts.threads;
        spec.validate();

        const fs::path dir(opts.out_dir);
        fs::create_directories(dir);

        const SweepResult result = beta_sweep(spec);
        json outputs = json::array();

        {
            OutputFile f(dir, "c_of_beta.csv");
            f << "beta,mean_C,stderr,replicates,excluded\n";
            for (const auto& row : result.rows)
                f << row.beta << "," << row.mean_c << "," << row.stderr_c << ","
                  << static_cast<std::int64_t>(row.replicates_ok) << "," << row.excluded
                  << "\n";
            outputs.push_back(f.close());
        }
        {
            OutputFile f(dir, "sweep_metrics.csv");
            f << "beta,mean_total_overlap,mean_max_share,mean_respawn_rate\n";
            for (const auto& row : result.rows)
                f << row.beta << "," << row.mean_total_overlap << "," << row.mean_max_share
                  << "," << row.mean_respawn_rate << "\n";
            outputs.push_back(f.close());
        }
        for (const auto& row : result.rows) {
            std::vector<double> sizes;
            for (const auto& rep : row.replicates)
                sizes.insert(sizes.end(), rep.pooled_sizes.begin(), rep.pooled_sizes.end());
            outputs.push_back(write_histogram_csv(
                dir, "histogram_beta=" + io::format_double(row.beta) + ".csv", sizes));
        }
        {
            const MinCorrelationPoint min = find_min_correlation_beta(result);
            json curve = json::array();
            for (const auto& [beta, c] : min.curve)
                curve.push_back(json{{"beta", beta}, {"mean_C", c}});
            json star{{"beta_star", min.beta_star},
                      {"c_star", min.c_star},
                      {"index", min.index},
                      {"interior", min.interior},
                      {"curve", std::move(curve)}};
            if (!min.interior)
                star["warning"] = "minimum sits on a grid endpoint; widen the beta grid";
            io::write_text_file((dir / "beta_star.json").string(), star.dump(2) + "\n");
            const std::string bytes = io::read_text_file((dir / "beta_star.json").string());
            outputs.push_back(json{{"path", "beta_star.json"},
                                   {"bytes", bytes.size()},
                                   {"fnv1a64", io::hex64(io::fnv1a64(bytes))}});
            diag << "sweep: beta_star = " << io::format_double(min.beta_star)
                 << (min.interior ? "" : " (endpoint, flagged)") << "\n";
        }

        write_manifest(dir, "sweep", lc.cfg, lc.text, started, std::move(outputs));
    });
}

int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& diag) {
    return run_guarded(diag, "fit", [&] {
        const std::string text = io::read_text_file(opts.csv_path);

        std::vector<std::pair<std::int64_t, double>> curve;
        std::size_t pos = 0;
        int line_no = 0;
        while (pos < text.size()) {
            std::size_t eol = text.find('\n', pos);
            if (eol == std::string::npos) eol = text.size();
            std::string_view line(text.data() + pos, eol - pos);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            pos = eol + 1;
            ++line_no;
            if (line.empty()) continue;
            if (line_no == 1 && line.find("rank") != std::string_view::npos) continue;

            const std::size_t comma = line.find(',');
            if (comma == std::string_view::npos)
                throw config_error(opts.csv_path + ":" + std::to_string(line_no) +
                                   ": expected rank,size");
            std::int64_t rank = 0;
            double size = 0.0;
            const auto r1 = std::from_chars(line.data(), line.data() + comma, rank);
            const auto r2 =
                std::from_chars(line.data() + comma + 1, line.data() + line.size(), size);
            if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
                r2.ptr != line.data() + line.size())
                throw config_error(opts.csv_path + ":" + std::to_string(line_no) +
                                   ": malformed row");
            curve.emplace_back(rank, size);
        }
        if (curve.empty()) throw config_error(opts.csv_path + ": no data rows");

        FitMethod method;
        if (opts.method == "regression")
            method = FitMethod::regression;
        else if (opts.method == "mle")
            method = FitMethod::mle;
        else
            throw config_error("--method must be 'regression' or 'mle'");

        std::int64_t max_rank = 0;
        for (const auto& [rank, size] : curve) max_rank = std::max(max_rank, rank);
        const auto [def_lo, def_hi] = default_fit_window(max_rank);
        const std::int64_t lo = opts.rank_lo.value_or(def_lo);
        const std::int64_t hi = opts.rank_hi.value_or(def_hi);

        PowerLawFit fit;
        try {
            fit = fit_power_law(curve, lo, hi, method);
        } catch (const fit_error& e) {
            throw config_error(e.what());
        }

        json j{{"method", method == FitMethod::regression ? "regression" : "mle"},
               {"exponent", fit.exponent},
               {"intercept", fit.intercept},
               {"r_squared", fit.r_squared},
               {"rank_lo", fit.rank_lo},
               {"rank_hi", fit.rank_hi}};
        if (method == FitMethod::mle && std::isfinite(fit.mle_rank_exponent))
            j["rank_exponent"] = fit.mle_rank_exponent; // 1 / (exponent - 1)
        out << j.dump() << "\n";
    });
}

} // namespace pmkt::cli
