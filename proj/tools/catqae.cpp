// catqae: run experiments, ingest loss data, project resources.
#include "catqae/core/errors.hpp"
#include "catqae/harness/checks.hpp"
#include "catqae/harness/config.hpp"
#include "catqae/harness/experiments.hpp"
#include "catqae/ingest/dataset.hpp"
#include "catqae/ingest/noaa.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>

namespace fs = std::filesystem;
using namespace catqae;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitCheck = 4;

struct RunArgs {
    std::string id;
    std::string dataset;
    bool fast = false;
    std::optional<std::uint64_t> seed;
    std::string out = "results";
    bool offline = false;
    std::string config;
    bool check = false;
    std::string cache;
};

int run(const RunArgs& a) {
    auto cfg = harness::default_config(harness::parse_experiment(a.id), a.fast);
    if (!a.config.empty()) harness::apply_config_file(cfg, a.config);
    if (!a.dataset.empty()) cfg.dataset = a.dataset;
    if (a.seed) cfg.master_seed = *a.seed;
    if (a.offline) cfg.offline = true;
    if (!a.cache.empty()) cfg.cache_dir = a.cache;
    cfg.validate();

    const auto t0 = std::chrono::steady_clock::now();
    const auto scenario = harness::load_scenario(cfg);
    std::fprintf(stderr, "%s: %s, %zu records, mu=%.5f sigma=%.5f\n", a.id.c_str(), scenario.provenance.c_str(),
                 scenario.losses.size(), scenario.params.mu, scenario.params.sigma);
    const auto report = harness::run_experiment(cfg, scenario);
    const auto dir = harness::write_report(report, a.out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << harness::to_csv(report);
    for (const auto& n : report.notes) std::cout << "# " << n << '\n';
    for (const auto& f : report.slope_fits) {
        std::printf("# slope %s: %.4f [%.4f, %.4f] R2=%.4f\n", f.estimator.c_str(), f.slope, f.ci_low, f.ci_high,
                    f.r_squared);
    }
    std::fprintf(stderr, "wrote %s (%.1fs)\n", dir.string().c_str(), secs);

    if (!a.check) return 0;
    const auto checks = harness::check_report(report);
    for (const auto& c : checks) {
        std::printf("%s  %s  %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    }
    return harness::all_passed(checks) ? 0 : kExitCheck;
}

std::string today() {
    const std::time_t t = std::time(nullptr);
    char buf[16];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", std::gmtime(&t));
    return buf;
}

int ingest_noaa(const fs::path& cache, bool offline, const std::string& out) {
    const auto manifest_path = cache / ingest::kManifestName;
    ingest::Manifest manifest;
    if (fs::exists(manifest_path)) {
        manifest = ingest::read_manifest(manifest_path);
    } else if (offline) {
        throw DataError("offline mode: no manifest at " + manifest_path.string());
    } else {
        manifest = ingest::discover_manifest(std::string(ingest::kNoaaBaseUrl), ingest::kFirstYear,
                                                ingest::kLastYear, today());
        fs::create_directories(cache);
        ingest::write_manifest(manifest, manifest_path);
    }
    ingest::LoadReport rep;
    const auto data = ingest::load_noaa(manifest, cache, offline, &rep);
    for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::printf("rows %zu kept %zu empty %zu below_threshold %zu malformed %zu\n", rep.rows, rep.kept, rep.empty,
                rep.below_threshold, rep.malformed);
    std::printf("provenance %s\n", data.provenance.c_str());
    if (!out.empty()) ingest::export_losses(data, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum amplitude estimation for catastrophe excess-of-loss pricing"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run_cmd = app.add_subcommand("run", "Run one experiment and write its report");
    run_cmd->add_option("experiment", ra.id, "exp1..exp7, exp4a, exp4b or binning")->required();
    run_cmd->add_option("--dataset", ra.dataset, "synthetic or noaa")->check(CLI::IsMember({"synthetic", "noaa"}));
    run_cmd->add_flag("--fast", ra.fast, "10 repetitions, n capped at 6");
    run_cmd->add_option("--seed", ra.seed, "master seed (default 42)");
    run_cmd->add_option("--out", ra.out, "output directory")->capture_default_str();
    run_cmd->add_flag("--offline", ra.offline, "never touch the network");
    run_cmd->add_option("--config", ra.config, "JSON file overriding config fields");
    run_cmd->add_flag("--check", ra.check, "evaluate acceptance tolerances; exit 4 on violation");
    run_cmd->add_option("--cache", ra.cache, "NOAA cache directory");

    auto* ingest_cmd = app.add_subcommand("ingest", "Load or generate loss data");
    ingest_cmd->require_subcommand(1);
    std::string cache = "data/cache", noaa_out;
    bool offline = false;
    auto* noaa = ingest_cmd->add_subcommand("noaa", "Download (if needed) and parse NOAA Storm Events files");
    noaa->add_option("--cache", cache, "cache directory")->capture_default_str();
    noaa->add_flag("--offline", offline, "use cached files only");
    noaa->add_option("--out", noaa_out, "export kept losses, one per line");

    std::size_t count = 20000;
    double alpha = 1.5, scale = 50000.0;
    std::uint64_t seed = 42;
    std::string synth_out = "synthetic_losses.txt";
    auto* synth = ingest_cmd->add_subcommand("synthetic", "Generate Pareto losses");
    synth->add_option("--count", count)->capture_default_str();
    synth->add_option("--alpha", alpha)->capture_default_str();
    synth->add_option("--scale", scale)->capture_default_str();
    synth->add_option("--seed", seed)->capture_default_str();
    synth->add_option("--out", synth_out)->capture_default_str();

    double cn = 0, cc = 0, depth = 0, gate = 0;
    auto* proj = app.add_subcommand("project-resources", "Best-case wall-clock projection");
    proj->add_option("--classical-n", cn, "classical samples N")->required();
    proj->add_option("--classical-cost", cc, "seconds per classical sample")->required();
    proj->add_option("--depth", depth, "oracle circuit depth")->required();
    proj->add_option("--gate-time", gate, "seconds per gate layer")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return run(ra);
        if (noaa->parsed()) return ingest_noaa(cache, offline, noaa_out);
        if (synth->parsed()) {
            const auto data = ingest::generate_pareto(count, alpha, scale, seed);
            ingest::export_losses(data, synth_out);
            std::printf("%zu losses -> %s (%s)\n", data.record_count(), synth_out.c_str(), data.provenance.c_str());
            return 0;
        }
        if (proj->parsed()) {
            const auto p = harness::resource_projection(cn, cc, depth, gate);
            std::cout << harness::format_projection(cn, cc, depth, gate, p);
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    }
    return 0;
}
