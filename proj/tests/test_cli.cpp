#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pmkt/cli.hpp"
#include "pmkt/io.hpp"
#include "test_util.hpp"

using namespace pmkt;
namespace fs = std::filesystem;

namespace {

std::string tiny_config_text() {
    return "n_firms = 32\n"
           "circumference = 19200\n"
           "burn_in_steps = 300\n"
           "sample_steps = 600\n"
           "sample_stride = 10\n"
           "seed = 13\n";
}

fs::path write_tiny_config(const testutil::TempDir& dir) {
    const fs::path p = dir.path / "tiny.ini";
    io::write_text_file(p.string(), tiny_config_text());
    return p;
}

} // namespace

TEST_CASE("cmd_run writes the full table set plus a checksummed manifest") {
    testutil::TempDir dir("run");
    const fs::path cfg = write_tiny_config(dir);

    cli::RunOptions opts;
    opts.config_path = cfg.string();
    opts.out_dir = (dir.path / "out").string();
    opts.track_firm = 7;

    std::ostringstream diag;
    REQUIRE(cli::cmd_run(opts, diag) == cli::exit_ok);

    for (const char* name :
         {"correlation.csv", "snapshots.csv", "ranksize.csv", "histogram.csv",
          "trajectory.csv", "manifest.json"})
        CHECK(fs::exists(dir.path / "out" / name));

    // manifest checksums match the bytes on disk; config echo is byte-faithful
    const auto manifest =
        nlohmann::json::parse(testutil::slurp(dir.path / "out" / "manifest.json"));
    CHECK(manifest["config_text"] == tiny_config_text());
    CHECK(manifest["config"]["n_firms"] == 32);
    for (const auto& entry : manifest["outputs"]) {
        const std::string bytes = testutil::slurp(dir.path / "out" / entry["path"]);
        CHECK(entry["fnv1a64"] == io::hex64(io::fnv1a64(bytes)));
        CHECK(entry["bytes"] == bytes.size());
    }

    // headers as contracted
    CHECK(testutil::slurp(dir.path / "out" / "correlation.csv").starts_with("time,value\n"));
    CHECK(testutil::slurp(dir.path / "out" / "snapshots.csv")
              .starts_with("time,firm_id,radius,size\n"));
    CHECK(testutil::slurp(dir.path / "out" / "ranksize.csv").starts_with("rank,size\n"));
    CHECK(testutil::slurp(dir.path / "out" / "histogram.csv")
              .starts_with("bin_lo,bin_hi,count,density\n"));
}

TEST_CASE("cmd_run reruns byte-identically") {
    testutil::TempDir dir("rerun");
    const fs::path cfg = write_tiny_config(dir);

    cli::RunOptions opts;
    opts.config_path = cfg.string();
    std::ostringstream diag;

    opts.out_dir = (dir.path / "a").string();
    REQUIRE(cli::cmd_run(opts, diag) == cli::exit_ok);
    opts.out_dir = (dir.path / "b").string();
    REQUIRE(cli::cmd_run(opts, diag) == cli::exit_ok);

    for (const char* name : {"correlation.csv", "snapshots.csv", "ranksize.csv", "histogram.csv"})
        CHECK(testutil::slurp(dir.path / "a" / name) == testutil::slurp(dir.path / "b" / name));
}

TEST_CASE("cmd_run exit codes: bad config 2, unreadable file 3") {
    testutil::TempDir dir("err");
    const fs::path bad = dir.path / "bad.ini";
    io::write_text_file(bad.string(), "n_firms = -5\n");

    cli::RunOptions opts;
    opts.config_path = bad.string();
    opts.out_dir = (dir.path / "out").string();
    std::ostringstream diag;
    CHECK(cli::cmd_run(opts, diag) == cli::exit_user_error);

    opts.config_path = (dir.path / "missing.ini").string();
    CHECK(cli::cmd_run(opts, diag) == cli::exit_io_error);

    const fs::path anchored = dir.path / "anchored.ini";
    io::write_text_file(anchored.string(), "n_firms = 10\nwhat = 3\n");
    opts.config_path = anchored.string();
    std::ostringstream diag2;
    CHECK(cli::cmd_run(opts, diag2) == cli::exit_user_error);
    CHECK(diag2.str().find(":2:") != std::string::npos);
}

TEST_CASE("cmd_sweep writes per-beta tables and beta_star.json") {
    testutil::TempDir dir("sweep");
    const fs::path cfg = write_tiny_config(dir);

    cli::SweepOptions opts;
    opts.config_path = cfg.string();
    opts.out_dir = (dir.path / "out").string();
    opts.betas = "0.5,1,2,4";
    opts.replicates = 2;
    opts.threads = 2;

    std::ostringstream diag;
    REQUIRE(cli::cmd_sweep(opts, diag) == cli::exit_ok);

    CHECK(fs::exists(dir.path / "out" / "c_of_beta.csv"));
    CHECK(fs::exists(dir.path / "out" / "sweep_metrics.csv"));
    CHECK(fs::exists(dir.path / "out" / "beta_star.json"));
    CHECK(fs::exists(dir.path / "out" / "manifest.json"));
    for (const char* b : {"0.5", "1", "2", "4"})
        CHECK(fs::exists(dir.path / "out" / (std::string("histogram_beta=") + b + ".csv")));

    const std::string c_of_beta = testutil::slurp(dir.path / "out" / "c_of_beta.csv");
    CHECK(c_of_beta.starts_with("beta,mean_C,stderr,replicates,excluded\n"));
    // one data row per grid point
    CHECK(std::count(c_of_beta.begin(), c_of_beta.end(), '\n') == 5);

    const auto star = nlohmann::json::parse(testutil::slurp(dir.path / "out" / "beta_star.json"));
    CHECK(star.contains("beta_star"));
    CHECK(star["curve"].size() == 4);
}

TEST_CASE("cmd_sweep is byte-identical across reruns and thread counts") {
    testutil::TempDir dir("sweepdet");
    const fs::path cfg = write_tiny_config(dir);

    cli::SweepOptions opts;
    opts.config_path = cfg.string();
    opts.betas = "0.5,2,8";
    opts.replicates = 2;

    std::ostringstream diag;
    opts.threads = 1;
    opts.out_dir = (dir.path / "a").string();
    REQUIRE(cli::cmd_sweep(opts, diag) == cli::exit_ok);
    opts.threads = 4;
    opts.out_dir = (dir.path / "b").string();
    REQUIRE(cli::cmd_sweep(opts, diag) == cli::exit_ok);

    for (const auto& entry : fs::directory_iterator(dir.path / "a")) {
        const std::string name = entry.path().filename().string();
        if (name == "manifest.json") continue; // carries wall-clock times
        CHECK(testutil::slurp(entry.path()) == testutil::slurp(dir.path / "b" / name));
    }
}

TEST_CASE("cmd_sweep rejects an empty or malformed beta list") {
    testutil::TempDir dir("sweepbad");
    cli::SweepOptions opts;
    opts.out_dir = (dir.path / "out").string();
    opts.betas = "";
    std::ostringstream diag;
    CHECK(cli::cmd_sweep(opts, diag) == cli::exit_user_error);

    opts.betas = "1,two,3";
    CHECK(cli::cmd_sweep(opts, diag) == cli::exit_user_error);

    opts.betas = "4,2,1"; // not increasing
    CHECK(cli::cmd_sweep(opts, diag) == cli::exit_user_error);
}

TEST_CASE("cmd_fit recovers an exact Zipf table and reports MLE fits") {
    testutil::TempDir dir("fit");
    std::ostringstream csv;
    csv << "rank,size\n";
    for (int k = 1; k <= 500; ++k) csv << k << "," << io::format_double(100.0 / k) << "\n";
    const fs::path path = dir.path / "zipf.csv";
    io::write_text_file(path.string(), csv.str());

    cli::FitOptions opts;
    opts.csv_path = path.string();
    opts.rank_lo = 1;
    opts.rank_hi = 500;

    std::ostringstream out, diag;
    REQUIRE(cli::cmd_fit(opts, out, diag) == cli::exit_ok);
    const auto fit = nlohmann::json::parse(out.str());
    CHECK(fit["method"] == "regression");
    CHECK(std::abs(fit["exponent"].get<double>() - 1.0) <= 1e-9);
    CHECK(std::abs(fit["r_squared"].get<double>() - 1.0) <= 1e-9);

    opts.method = "mle";
    std::ostringstream out2;
    REQUIRE(cli::cmd_fit(opts, out2, diag) == cli::exit_ok);
    const auto mle = nlohmann::json::parse(out2.str());
    CHECK(mle["method"] == "mle");
    CHECK(mle.contains("rank_exponent"));
}

TEST_CASE("cmd_fit rejects malformed tables with exit 2") {
    testutil::TempDir dir("fitbad");
    const fs::path path = dir.path / "bad.csv";
    io::write_text_file(path.string(), "rank,size\n1,10\nnot-a-row\n");

    cli::FitOptions opts;
    opts.csv_path = path.string();
    std::ostringstream out, diag;
    CHECK(cli::cmd_fit(opts, out, diag) == cli::exit_user_error);

    opts.csv_path = (dir.path / "missing.csv").string();
    CHECK(cli::cmd_fit(opts, out, diag) == cli::exit_io_error);
}
