#pragma once

#include "catqae/core/estimator_result.hpp"
#include "catqae/dist/binning.hpp"
#include "catqae/qsim/circuit.hpp"
#include "catqae/qsim/noise.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace catqae::oracle {

/// Amplitude-encoding oracle A for E[(X - M)^+] on a binned distribution.
///
/// Register layout: qubits 0..n-1 hold the bin index (qubit n-1 most
/// significant), qubit n is the payoff ancilla.
struct OracleSpec {
    dist::BinnedDistribution binned;
    double threshold = 0.0;                 // M, dollars
    double f_max = 0.0;                     // max_j (x_j - M)^+
    std::vector<double> normalized_payoff;  // (x_i - M)^+ / f_max
    qsim::Circuit circuit_A{1};
    double true_readout_prob = 0.0;         // sum_i p_i f~_i

    std::size_t index_qubits() const noexcept { return binned.n_qubits; }
    qsim::Qubit ancilla() const noexcept { return binned.n_qubits; }
    /// Threshold at or above every midpoint: the payoff vanishes.
    bool degenerate() const noexcept { return f_max <= 0.0; }
};

struct QAEConfig {
    std::uint64_t grover_k = 0;
    std::uint64_t shots = 1000;
    std::uint64_t rng_seed = 0;
    std::uint64_t rep_index = 0;
};

/// Binary tree of RY / CRY / MCRY rotations (X-conjugated controls) over n qubits
/// preparing sum_i sqrt(p_i)|i>. Subtrees with zero mass get no gates.
qsim::Circuit build_state_prep(const dist::BinnedDistribution& binned);

/// Ry angle encoding a normalized payoff f: 2 asin(sqrt f).
double payoff_angle(double normalized_payoff);

OracleSpec build_oracle(const dist::BinnedDistribution& binned, double threshold);

/// readout_prob * f_max.
double recover_excess(double readout_prob, double f_max);

/// Largest k with (2k + 1) theta < pi/2, theta = asin(sqrt P).
/// nullopt when P = 0: no amplification is defined (or needed).
std::optional<std::uint64_t> k_max(double readout_prob);

/// sin^2(asin(sqrt p) / (2k + 1)).
double deamplify(double p_meas, std::uint64_t k);

/// Q = A S0 A^dag S_chi, gates in application order.
qsim::Circuit build_grover(const OracleSpec& oracle);

/// A followed by k copies of Q.
qsim::Circuit build_amplified(const OracleSpec& oracle, std::uint64_t k);

/// Exact ancilla |1> probability of A Q^k from the statevector.
double amplified_readout_probability(const OracleSpec& oracle, std::uint64_t k);

/// Grover-boosted estimate from `shots` ancilla measurements of A Q^k.
/// queries = shots * (2k + 1). Throws SafetyError when k exceeds k_max.
/// A degenerate oracle returns $0 at zero queries.
EstimatorResult qae_estimate(const OracleSpec& oracle, const QAEConfig& config);

/// Reuses one statevector simulation of A Q^k across many repetitions.
class QaeSampler {
public:
    QaeSampler(const OracleSpec& oracle, std::uint64_t k);

    std::uint64_t k() const noexcept { return k_; }
    double amplified_probability() const noexcept { return p_amplified_; }
    EstimatorResult run(std::uint64_t shots, std::uint64_t seed, std::uint64_t rep_index) const;

private:
    double f_max_;
    std::uint64_t k_;
    double p_amplified_;
    bool degenerate_;
};

/// Where noise channels are attached in the noisy path.
enum class NoisePlacement {
    Basis,    // after every gate of the transpiled {CX, RZ, SX, X} circuit
    Logical,  // after every gate of the logical circuit
};

/// Same protocol as qae_estimate but measured through noisy_execute.
EstimatorResult qae_estimate_noisy(const OracleSpec& oracle, const QAEConfig& config,
                                   const qsim::NoisePreset& noise,
                                   NoisePlacement placement = NoisePlacement::Basis);

} // namespace catqae::oracle
