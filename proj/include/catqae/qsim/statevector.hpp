#pragma once

#include "catqae/qsim/circuit.hpp"
#include "catqae/qsim/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace catqae::qsim {

/// 2x2 unitary of an uncontrolled gate kind, RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
Mat2 gate_matrix(GateKind kind, double angle);

/// Dense statevector. Qubit q is bit q of the basis index (qubit 0 least significant).
class Statevector {
public:
    /// |0...0> on `num_qubits` qubits.
    explicit Statevector(std::size_t num_qubits);

    /// Takes ownership of `amplitudes`; length must be a power of two.
    static Statevector from_amplitudes(std::vector<Amplitude> amplitudes);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    const std::vector<Amplitude>& amplitudes() const noexcept { return amps_; }
    std::vector<Amplitude>& amplitudes() noexcept { return amps_; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    /// Throws InvalidGate when the gate does not fit this register.
    void apply(const Gate& gate);
    /// Applies X^x_mask Z^z_mask (a Pauli string, up to phase).
    void apply_pauli(std::uint64_t x_mask, std::uint64_t z_mask);

    double norm() const;
    std::vector<double> probabilities() const;
    double probability_of_one(Qubit qubit) const;

    bool operator==(const Statevector&) const = default;

private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

Statevector apply_gate(Statevector state, const Gate& gate);

/// Runs the circuit from |0...0>.
Statevector simulate(const Circuit& circuit);

/// Runs the circuit from an arbitrary input state.
Statevector simulate(const Circuit& circuit, Statevector initial);

} // namespace catqae::qsim
