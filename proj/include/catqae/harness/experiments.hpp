#pragma once

#include "catqae/dist/binning.hpp"
#include "catqae/harness/report.hpp"
#include "catqae/oracle/oracle.hpp"
#include "catqae/qsim/noise.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catqae::harness {

enum class ExperimentId { Exp1, Exp2, Exp3, Exp4a, Exp4b, Exp5, Exp6, Exp7, Binning };

std::string_view to_string(ExperimentId id);
/// exp1 ... exp7, exp4a, exp4b, binning. Throws ConfigError.
ExperimentId parse_experiment(std::string_view name);
const std::vector<ExperimentId>& all_experiments();

/// Every knob of one experiment run.
struct ExperimentConfig {
    ExperimentId id = ExperimentId::Exp1;
    std::string dataset = "synthetic";  // synthetic | noaa
    std::size_t n_qubits = 3;
    dist::BinScheme scheme = dist::BinScheme::EqualWidth;
    std::vector<double> percentiles{95.0};
    std::vector<std::uint64_t> k_values;        // exp1 / exp4a
    std::vector<std::uint64_t> budgets;         // exp5 / exp7 (and exp6 / binning: first entry)
    std::vector<std::size_t> qubit_counts;      // exp6 / binning
    std::vector<dist::BinScheme> schemes;       // binning
    std::uint64_t shots = 1000;                 // per quantum run (exp1/4a/2); total for exp3/4b
    std::uint64_t k_cap = 6;                    // exp3/4b: k_use = min(k_max, k_cap)
    std::size_t repetitions = 30;
    std::vector<qsim::NoisePreset> noise;       // exp2
    oracle::NoisePlacement noise_placement = oracle::NoisePlacement::Basis;
    std::uint64_t master_seed = 42;
    std::size_t bootstrap_resamples = 2000;
    bool fast = false;

    // Data sources.
    std::filesystem::path cache_dir = "data/cache";
    bool offline = false;
    std::size_t synthetic_count = 20000;
    double synthetic_alpha = 1.5;
    double synthetic_scale = 50000.0;
    std::optional<std::uint64_t> synthetic_seed;  // defaults to master_seed
    // Optional pins replacing the fitted parameters / empirical thresholds.
    std::optional<dist::LognormalParams> pinned_params;
    std::map<double, double> pinned_thresholds;  // percentile -> dollars

    /// Throws ConfigError when a field is out of range.
    void validate() const;
};

/// Standard protocol; `fast` cuts repetitions to 10 and caps n at 6.
ExperimentConfig default_config(ExperimentId id, bool fast = false);

/// Loss model an experiment runs against.
struct Scenario {
    std::string dataset;
    std::string provenance;
    std::vector<double> losses;  // raw sample the thresholds come from
    dist::LognormalParams params;
    std::map<double, double> pinned_thresholds;

    /// Empirical percentile of the sample unless pinned.
    double threshold(double percentile) const;
};

/// Synthetic: Pareto draw, MLE fit. NOAA: manifest in cache_dir, MLE fit.
/// Throws DataError when the NOAA cache is unusable.
Scenario load_scenario(const ExperimentConfig& config);

ExperimentReport run_convergence(const ExperimentConfig& config, const Scenario& scenario);
ExperimentReport run_noise(const ExperimentConfig& config, const Scenario& scenario);
ExperimentReport run_tail_sweep(const ExperimentConfig& config, const Scenario& scenario);
ExperimentReport run_budget_match(const ExperimentConfig& config, const Scenario& scenario);
ExperimentReport run_qubit_sweep(const ExperimentConfig& config, const Scenario& scenario);
ExperimentReport run_empirical(const ExperimentConfig& config, const Scenario& scenario);
ExperimentReport run_binning_compare(const ExperimentConfig& config, const Scenario& scenario);

/// Dispatches on config.id.
ExperimentReport run_experiment(const ExperimentConfig& config, const Scenario& scenario);

struct ResourceProjection {
    double classical_seconds = 0.0;  // N * T_c
    double quantum_queries = 0.0;    // sqrt(N)
    double quantum_seconds = 0.0;    // sqrt(N) * depth * t_g
    double ratio = 0.0;              // classical / quantum
};

/// Best-case wall-clock comparison. All inputs must be positive (DomainError).
ResourceProjection resource_projection(double classical_n, double classical_cost_s,
                                       double oracle_depth, double gate_time_s);
/// Human-readable report, caveats first.
std::string format_projection(double classical_n, double classical_cost_s, double oracle_depth,
                              double gate_time_s, const ResourceProjection& projection);

} // namespace catqae::harness
