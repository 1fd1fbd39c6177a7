#include "catqae/qsim/statevector.hpp"

#include "catqae/core/errors.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace catqae::qsim {

namespace {

std::uint64_t control_mask_of(const Gate& gate) {
    std::uint64_t mask = 0;
    for (Qubit c : gate.controls) mask |= std::uint64_t{1} << c;
    return mask;
}

bool use_parallel(std::size_t num_qubits) {
    return num_qubits >= kernels::kParallelThresholdQubits;
}

} // namespace

Mat2 gate_matrix(GateKind kind, double angle) {
    using namespace std::complex_literals;
    switch (kind) {
    case GateKind::RY:
    case GateKind::CRY:
    case GateKind::MCRY: {
        const double c = std::cos(angle / 2.0);
        const double s = std::sin(angle / 2.0);
        return {c, -s, s, c};
    }
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H: {
        const double r = 1.0 / std::numbers::sqrt2;
        return {r, r, r, -r};
    }
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::RZ:
        return {std::exp(-0.5i * angle), 0.0, 0.0, std::exp(0.5i * angle)};
    case GateKind::SX:
        return {0.5 + 0.5i, 0.5 - 0.5i, 0.5 - 0.5i, 0.5 + 0.5i};
    }
    throw InvalidGate("unknown gate kind");
}

Statevector::Statevector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
    if (num_qubits == 0 || num_qubits > 30) {
        throw InvalidGate("statevector: qubit count must be in 1..30");
    }
    amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const auto dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw InvalidGate("statevector: length must be a power of two >= 2");
    }
    Statevector s(static_cast<std::size_t>(std::countr_zero(dim)));
    s.amps_ = std::move(amplitudes);
    return s;
}

void Statevector::apply(const Gate& gate) {
    gate.validate(num_qubits_);
    const Mat2 m = gate_matrix(gate.kind, gate.angle);
    const auto target = static_cast<unsigned>(gate.target);
    const auto mask = control_mask_of(gate);
    if (use_parallel(num_qubits_)) {
        kernels::parallel::apply_controlled(amps_, target, mask, m);
    } else {
        kernels::serial::apply_controlled(amps_, target, mask, m);
    }
}

void Statevector::apply_pauli(std::uint64_t x_mask, std::uint64_t z_mask) {
    const std::uint64_t limit = amps_.size() - 1;
    if ((x_mask | z_mask) & ~limit) throw InvalidGate("pauli: qubit out of range");
    if (use_parallel(num_qubits_)) {
        kernels::parallel::apply_pauli_string(amps_, x_mask, z_mask);
    } else {
        kernels::serial::apply_pauli_string(amps_, x_mask, z_mask);
    }
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

double Statevector::probability_of_one(Qubit qubit) const {
    if (qubit >= num_qubits_) throw InvalidGate("probability_of_one: qubit out of range");
    const auto q = static_cast<unsigned>(qubit);
    return use_parallel(num_qubits_) ? kernels::parallel::probability_of_one(amps_, q)
                                     : kernels::serial::probability_of_one(amps_, q);
}

Statevector apply_gate(Statevector state, const Gate& gate) {
    state.apply(gate);
    return state;
}

Statevector simulate(const Circuit& circuit) {
    return simulate(circuit, Statevector(circuit.num_qubits()));
}

Statevector simulate(const Circuit& circuit, Statevector initial) {
    if (initial.num_qubits() != circuit.num_qubits()) {
        throw InvalidGate("simulate: initial state has " + std::to_string(initial.num_qubits()) +
                          " qubits, circuit has " + std::to_string(circuit.num_qubits()));
    }
    for (const auto& g : circuit.gates()) initial.apply(g);
    return initial;
}

} // namespace catqae::qsim
