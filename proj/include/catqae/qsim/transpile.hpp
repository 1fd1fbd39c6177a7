#pragma once

#include "catqae/qsim/circuit.hpp"

#include <cstddef>
#include <span>

namespace catqae::qsim {

struct CircuitMetrics {
    std::size_t two_qubit_count = 0;
    std::size_t depth = 0;
    std::size_t total_gates = 0;

    bool operator==(const CircuitMetrics&) const = default;
};

/// Longest qubit-wise dependency chain (ASAP layering).
std::size_t circuit_depth(const Circuit& circuit);

/// Metrics of any circuit; two_qubit_count counts gates acting on two or more qubits.
CircuitMetrics measure(const Circuit& circuit);

/// A circuit over {CX, RZ, SX, X} and its metrics.
struct BasisCircuit {
    Circuit circuit;
    CircuitMetrics metrics;
};

/// True when every gate is CX, RZ, SX or X.
bool is_basis_circuit(const Circuit& circuit);

/// Rewrites `circuit` over {CX, RZ, SX, X}, equal to the input up to global phase.
///
/// Rules, applied gate by gate:
///  - uncontrolled gates: ZYZ Euler angles, emitted as RZ.SX.RZ.SX.RZ
///    (a purely diagonal gate collapses to one RZ; zero-angle RZ are dropped);
///    X, SX and RZ pass through unchanged
///  - CX passes through
///  - CRY / MCRY with m controls: Gray-code multiplexed rotation, 2^m RY
///    interleaved with 2^m CX (m = 1 is RY(t/2).CX.RY(-t/2).CX)
///  - MCX: H . (multi-controlled Z) . H, the controlled Z synthesised as a
///    recursive diagonal of Gray-code multiplexed RZ
BasisCircuit transpile_to_basis(const Circuit& circuit);

} // namespace catqae::qsim
