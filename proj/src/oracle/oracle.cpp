#include "catqae/oracle/oracle.hpp"

#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"
#include "catqae/qsim/sampling.hpp"
#include "catqae/qsim/statevector.hpp"
#include "catqae/qsim/transpile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace catqae::oracle {

using qsim::Circuit;
using qsim::Gate;
using qsim::Qubit;

namespace {

// Rotation on `target` conditioned on `controls` reading `pattern`
// (bit j of pattern is the required value of controls[j]).
void conditioned_ry(Circuit& c, const std::vector<Qubit>& controls, std::uint64_t pattern,
                    Qubit target, double angle) {
    for (std::size_t j = 0; j < controls.size(); ++j) {
        if (!((pattern >> j) & 1U)) c.append(Gate::x(controls[j]));
    }
    if (controls.empty()) {
        c.append(Gate::ry(target, angle));
    } else if (controls.size() == 1) {
        c.append(Gate::cry(controls[0], target, angle));
    } else {
        c.append(Gate::mcry(controls, target, angle));
    }
    for (std::size_t j = 0; j < controls.size(); ++j) {
        if (!((pattern >> j) & 1U)) c.append(Gate::x(controls[j]));
    }
}

void append_state_prep(Circuit& c, const std::vector<double>& probs, std::size_t n) {
    for (double p : probs) {
        if (p < 0.0 || !std::isfinite(p)) throw DomainError("state prep: negative or non-finite probability");
    }
    // Level l fixes qubit n-1-l given the already prepared higher qubits.
    for (std::size_t level = 0; level < n; ++level) {
        const Qubit target = n - 1 - level;
        std::vector<Qubit> controls;
        for (std::size_t j = 0; j < level; ++j) controls.push_back(n - level + j);
        const std::size_t block = std::size_t{1} << (n - level);  // bins under one prefix
        for (std::size_t prefix = 0; prefix < (std::size_t{1} << level); ++prefix) {
            const auto first = probs.begin() + static_cast<std::ptrdiff_t>(prefix * block);
            double low = 0.0, high = 0.0;
            for (std::size_t i = 0; i < block / 2; ++i) low += first[static_cast<std::ptrdiff_t>(i)];
            for (std::size_t i = block / 2; i < block; ++i) high += first[static_cast<std::ptrdiff_t>(i)];
            const double mass = low + high;
            if (!(mass > 0.0)) continue;
            const double angle = 2.0 * std::atan2(std::sqrt(high), std::sqrt(low));
            conditioned_ry(c, controls, prefix, target, angle);
        }
    }
}

} // namespace

Circuit build_state_prep(const dist::BinnedDistribution& binned) {
    Circuit c(binned.n_qubits, "state_prep");
    append_state_prep(c, binned.probs, binned.n_qubits);
    return c;
}

double payoff_angle(double normalized_payoff) {
    return 2.0 * std::asin(std::sqrt(std::clamp(normalized_payoff, 0.0, 1.0)));
}

OracleSpec build_oracle(const dist::BinnedDistribution& binned, double threshold) {
    binned.validate();
    const std::size_t n = binned.n_qubits;
    OracleSpec spec;
    spec.binned = binned;
    spec.threshold = threshold;
    for (double x : binned.midpoints) spec.f_max = std::max(spec.f_max, std::max(0.0, x - threshold));

    spec.normalized_payoff.assign(binned.size(), 0.0);
    if (spec.f_max > 0.0) {
        for (std::size_t i = 0; i < binned.size(); ++i) {
            spec.normalized_payoff[i] = std::max(0.0, binned.midpoints[i] - threshold) / spec.f_max;
        }
    }

    Circuit a(n + 1, "A");
    append_state_prep(a, binned.probs, n);
    std::vector<Qubit> index(n);
    for (std::size_t j = 0; j < n; ++j) index[j] = j;
    for (std::size_t i = 0; i < binned.size(); ++i) {
        if (spec.normalized_payoff[i] <= 0.0) continue;
        conditioned_ry(a, index, i, n, payoff_angle(spec.normalized_payoff[i]));
    }
    spec.circuit_A = std::move(a);

    double p1 = 0.0;
    for (std::size_t i = 0; i < binned.size(); ++i) p1 += binned.probs[i] * spec.normalized_payoff[i];
    spec.true_readout_prob = std::min(p1, 1.0);
    return spec;
}

double recover_excess(double readout_prob, double f_max) {
    if (!(readout_prob >= 0.0 && readout_prob <= 1.0)) {
        throw DomainError("recover_excess: readout probability must lie in [0, 1]");
    }
    return readout_prob * f_max;
}

std::optional<std::uint64_t> k_max(double readout_prob) {
    if (!(readout_prob >= 0.0 && readout_prob <= 1.0)) {
        throw DomainError("k_max: readout probability must lie in [0, 1]");
    }
    if (readout_prob == 0.0) return std::nullopt;
    const double theta = std::asin(std::sqrt(readout_prob));
    const double k = std::floor((std::numbers::pi / (2.0 * theta) - 1.0) / 2.0);
    std::uint64_t out = k > 0.0 ? static_cast<std::uint64_t>(k) : 0;
    // floor() can land exactly on the boundary; enforce the strict inequality.
    while (out > 0 && static_cast<double>(2 * out + 1) * theta >= std::numbers::pi / 2.0) --out;
    return out;
}

double deamplify(double p_meas, std::uint64_t k) {
    const double p = std::clamp(p_meas, 0.0, 1.0);
    const double s = std::sin(std::asin(std::sqrt(p)) / static_cast<double>(2 * k + 1));
    return s * s;
}

Circuit build_grover(const OracleSpec& oracle) {
    const std::size_t width = oracle.index_qubits() + 1;
    const Qubit anc = oracle.ancilla();
    Circuit q(width, "Q");
    q.append(Gate::z(anc));  // S_chi
    q.append(oracle.circuit_A.inverse());
    // S0: phase flip on |0...0>
    for (Qubit j = 0; j < width; ++j) q.append(Gate::x(j));
    q.append(Gate::h(anc));
    std::vector<Qubit> controls(width - 1);
    for (Qubit j = 0; j + 1 < width; ++j) controls[j] = j;
    q.append(controls.size() == 1 ? Gate::cx(controls[0], anc) : Gate::mcx(controls, anc));
    q.append(Gate::h(anc));
    for (Qubit j = 0; j < width; ++j) q.append(Gate::x(j));
    q.append(oracle.circuit_A);
    return q;
}

Circuit build_amplified(const OracleSpec& oracle, std::uint64_t k) {
    Circuit full(oracle.index_qubits() + 1, "A_Q^" + std::to_string(k));
    full.append(oracle.circuit_A);
    if (k > 0) {
        const Circuit q = build_grover(oracle);
        for (std::uint64_t i = 0; i < k; ++i) full.append(q);
    }
    return full;
}

double amplified_readout_probability(const OracleSpec& oracle, std::uint64_t k) {
    return qsim::simulate(build_amplified(oracle, k)).probability_of_one(oracle.ancilla());
}

namespace {

void check_safety(const OracleSpec& oracle, std::uint64_t k) {
    const auto limit = k_max(oracle.true_readout_prob);
    if (limit && k > *limit) {
        throw SafetyError("grover k = " + std::to_string(k) + " exceeds k_max = " +
                          std::to_string(*limit));
    }
}

EstimatorResult finish(double freq, double f_max, std::uint64_t k, std::uint64_t shots,
                       std::uint64_t seed, std::uint64_t rep_index, const char* name) {
    EstimatorResult r;
    r.estimate = recover_excess(deamplify(freq, k), f_max);
    r.queries = shots * (2 * k + 1);
    r.estimator = name;
    r.seed = seed;
    r.rep_index = rep_index;
    return r;
}

} // namespace

QaeSampler::QaeSampler(const OracleSpec& oracle, std::uint64_t k)
    : f_max_(oracle.f_max), k_(k), p_amplified_(0.0), degenerate_(oracle.degenerate()) {
    if (degenerate_) return;
    check_safety(oracle, k);
    p_amplified_ = amplified_readout_probability(oracle, k);
}

EstimatorResult QaeSampler::run(std::uint64_t shots, std::uint64_t seed, std::uint64_t rep_index) const {
    if (shots == 0) throw DomainError("qae: shots must be >= 1");
    if (degenerate_) {
        EstimatorResult r;
        r.estimator = "qae";
        r.seed = seed;
        r.rep_index = rep_index;
        return r;
    }
    // Same draw as sample_shots on the ancilla marginal.
    const qsim::OutcomeSampler sampler({1.0 - p_amplified_, p_amplified_});
    Rng rng(seed);
    std::uint64_t ones = 0;
    for (std::uint64_t s = 0; s < shots; ++s) ones += sampler.draw(rng);
    const double freq = static_cast<double>(ones) / static_cast<double>(shots);
    return finish(freq, f_max_, k_, shots, seed, rep_index, "qae");
}

EstimatorResult qae_estimate(const OracleSpec& oracle, const QAEConfig& config) {
    return QaeSampler(oracle, config.grover_k).run(config.shots, config.rng_seed, config.rep_index);
}

EstimatorResult qae_estimate_noisy(const OracleSpec& oracle, const QAEConfig& config,
                                   const qsim::NoisePreset& noise, NoisePlacement placement) {
    if (config.shots == 0) throw DomainError("qae: shots must be >= 1");
    if (oracle.degenerate()) {
        EstimatorResult r;
        r.estimator = "qae_noisy";
        r.seed = config.rng_seed;
        r.rep_index = config.rep_index;
        return r;
    }
    check_safety(oracle, config.grover_k);
    Circuit circuit = build_amplified(oracle, config.grover_k);
    if (placement == NoisePlacement::Basis) circuit = qsim::transpile_to_basis(circuit).circuit;
    const std::array<Qubit, 1> measured{oracle.ancilla()};
    const auto hist = qsim::noisy_execute(circuit, noise, measured, config.shots, config.rng_seed);
    return finish(hist.frequency_of_one(0), oracle.f_max, config.grover_k, config.shots,
                  config.rng_seed, config.rep_index, "qae_noisy");
}

} // namespace catqae::oracle
