#pragma once

#include "catqae/harness/experiments.hpp"

#include <filesystem>
#include <string_view>

namespace catqae::harness {

/// Overrides fields of `config` from a JSON object. Keys mirror ExperimentConfig:
///   dataset, n_qubits, scheme, percentiles, k_values, budgets, qubit_counts, schemes,
///   shots, k_cap, repetitions, noise (preset names or {name,p_1q,p_2q,p_readout}),
///   noise_placement (basis|logical), master_seed, bootstrap_resamples, cache_dir,
///   offline, synthetic {count, alpha, scale, seed}, pinned_params {mu, sigma},
///   pinned_thresholds {"95": dollars}.
/// Unknown keys and wrong types throw ConfigError.
void apply_config_json(ExperimentConfig& config, std::string_view json_text);
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

} // namespace catqae::harness
