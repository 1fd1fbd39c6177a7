#pragma once

#include "catqae/qsim/circuit.hpp"
#include "catqae/qsim/sampling.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace catqae::qsim {

/// Depolarizing + symmetric readout error rates.
struct NoisePreset {
    std::string name = "noiseless";
    double p_1q = 0.0;
    double p_2q = 0.0;
    double p_readout = 0.0;

    static NoisePreset noiseless();
    static NoisePreset low();
    static NoisePreset medium();
    static NoisePreset high();
    /// Looks up one of noiseless/low/medium/high; throws ConfigError otherwise.
    static NoisePreset from_name(std::string_view name);

    bool is_noiseless() const noexcept {
        return p_1q == 0.0 && p_2q == 0.0 && p_readout == 0.0;
    }
    /// Throws DomainError when a rate falls outside [0, 1].
    void validate() const;

    bool operator==(const NoisePreset&) const = default;
};

/// Per-shot stochastic trajectories of `circuit` under `noise`.
///
/// After every gate acting on k qubits, with probability p_1q (k = 1) or p_2q
/// (k >= 2) a Pauli drawn uniformly from the 4^k-element group (identity
/// included) is applied to those qubits. Each measured bit is then flipped
/// independently with probability p_readout. A noiseless preset reproduces
/// sample_shots exactly for the same seed.
Histogram noisy_execute(const Circuit& circuit, const NoisePreset& noise,
                        std::span<const Qubit> measured_qubits, std::uint64_t shots,
                        std::uint64_t rng_seed);

} // namespace catqae::qsim
