#pragma once

#include "catqae/qsim/circuit.hpp"
#include "catqae/qsim/statevector.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace catqae::qsim {

/// Outcome counts. Bit j of an outcome is the result of measured_qubits[j].
struct Histogram {
    std::size_t width = 0;  // number of measured qubits
    std::map<std::uint64_t, std::uint64_t> counts;

    std::uint64_t total() const;
    std::uint64_t count(std::uint64_t outcome) const;
    double frequency(std::uint64_t outcome) const;
    /// Marginal frequency of measured bit `bit` being 1.
    double frequency_of_one(std::size_t bit) const;
    /// Keys rendered little-endian: the last character is measured_qubits[0].
    std::map<std::string, std::uint64_t> bitstrings() const;

    bool operator==(const Histogram&) const = default;
};

std::string to_bitstring(std::uint64_t outcome, std::size_t width);

/// Born-rule distribution over the measured qubits (length 2^measured).
std::vector<double> marginal_distribution(const Statevector& state,
                                          std::span<const Qubit> measured_qubits);

/// Draws `shots` outcomes from a fixed distribution using the given stream.
class OutcomeSampler {
public:
    explicit OutcomeSampler(std::vector<double> distribution);
    template <class Rng>
    std::uint64_t draw(Rng& rng) const {
        return locate(rng.uniform());
    }
    std::size_t size() const noexcept { return cumulative_.size(); }

private:
    std::uint64_t locate(double u) const;
    std::vector<double> cumulative_;
};

/// Measures `measured_qubits` `shots` times. Deterministic in `rng_seed`.
Histogram sample_shots(const Statevector& state, std::span<const Qubit> measured_qubits,
                       std::uint64_t shots, std::uint64_t rng_seed);

} // namespace catqae::qsim
