#include "catqae/harness/config.hpp"

#include "catqae/core/errors.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace catqae::harness {

namespace {

using nlohmann::json;

template <class T>
T get(const json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

qsim::NoisePreset preset_of(const json& j) {
    if (j.is_string()) return qsim::NoisePreset::from_name(j.get<std::string>());
    if (!j.is_object()) throw ConfigError("noise entries must be names or objects");
    qsim::NoisePreset p;
    p.name = j.value("name", std::string("custom"));
    p.p_1q = j.value("p_1q", 0.0);
    p.p_2q = j.value("p_2q", 0.0);
    p.p_readout = j.value("p_readout", 0.0);
    return p;
}

} // namespace

void apply_config_json(ExperimentConfig& c, std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config must be a JSON object");

    for (const auto& [key, v] : root.items()) {
        if (key == "dataset") c.dataset = get<std::string>(v, key);
        else if (key == "n_qubits") c.n_qubits = get<std::size_t>(v, key);
        else if (key == "scheme") c.scheme = dist::parse_scheme(get<std::string>(v, key));
        else if (key == "percentiles") c.percentiles = get<std::vector<double>>(v, key);
        else if (key == "k_values") c.k_values = get<std::vector<std::uint64_t>>(v, key);
        else if (key == "budgets") c.budgets = get<std::vector<std::uint64_t>>(v, key);
        else if (key == "qubit_counts") c.qubit_counts = get<std::vector<std::size_t>>(v, key);
        else if (key == "schemes") {
            c.schemes.clear();
            for (const auto& s : get<std::vector<std::string>>(v, key)) c.schemes.push_back(dist::parse_scheme(s));
        } else if (key == "shots") c.shots = get<std::uint64_t>(v, key);
        else if (key == "k_cap") c.k_cap = get<std::uint64_t>(v, key);
        else if (key == "repetitions") c.repetitions = get<std::size_t>(v, key);
        else if (key == "noise") {
            if (!v.is_array()) throw ConfigError("noise must be an array");
            c.noise.clear();
            for (const auto& e : v) c.noise.push_back(preset_of(e));
        } else if (key == "noise_placement") {
            const auto s = get<std::string>(v, key);
            if (s == "basis") c.noise_placement = oracle::NoisePlacement::Basis;
            else if (s == "logical") c.noise_placement = oracle::NoisePlacement::Logical;
            else throw ConfigError("noise_placement must be basis or logical");
        } else if (key == "master_seed") c.master_seed = get<std::uint64_t>(v, key);
        else if (key == "bootstrap_resamples") c.bootstrap_resamples = get<std::size_t>(v, key);
        else if (key == "cache_dir") c.cache_dir = get<std::string>(v, key);
        else if (key == "offline") c.offline = get<bool>(v, key);
        else if (key == "synthetic") {
            if (!v.is_object()) throw ConfigError("synthetic must be an object");
            for (const auto& [k2, v2] : v.items()) {
                if (k2 == "count") c.synthetic_count = get<std::size_t>(v2, k2);
                else if (k2 == "alpha") c.synthetic_alpha = get<double>(v2, k2);
                else if (k2 == "scale") c.synthetic_scale = get<double>(v2, k2);
                else if (k2 == "seed") c.synthetic_seed = get<std::uint64_t>(v2, k2);
                else throw ConfigError("unknown config key 'synthetic." + k2 + "'");
            }
        } else if (key == "pinned_params") {
            if (!v.is_object() || !v.contains("mu") || !v.contains("sigma")) {
                throw ConfigError("pinned_params needs mu and sigma");
            }
            c.pinned_params = dist::LognormalParams{get<double>(v["mu"], "mu"), get<double>(v["sigma"], "sigma")};
        } else if (key == "pinned_thresholds") {
            if (!v.is_object()) throw ConfigError("pinned_thresholds must be an object");
            for (const auto& [pct, m] : v.items()) {
                try {
                    c.pinned_thresholds[std::stod(pct)] = get<double>(m, key);
                } catch (const std::logic_error&) {
                    throw ConfigError("pinned_thresholds keys must be percentiles");
                }
            }
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_json(config, buf.str());
}

} // namespace catqae::harness
