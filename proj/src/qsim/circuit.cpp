#include "catqae/qsim/circuit.hpp"

#include "catqae/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace catqae::qsim {

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RY: return "ry";
    case GateKind::CRY: return "cry";
    case GateKind::MCRY: return "mcry";
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::Z: return "z";
    case GateKind::CX: return "cx";
    case GateKind::MCX: return "mcx";
    case GateKind::RZ: return "rz";
    case GateKind::SX: return "sx";
    }
    return "?";
}

Gate Gate::ry(Qubit target, double angle) { return {GateKind::RY, target, {}, angle}; }
Gate Gate::cry(Qubit control, Qubit target, double angle) {
    return {GateKind::CRY, target, {control}, angle};
}
Gate Gate::mcry(std::vector<Qubit> controls, Qubit target, double angle) {
    return {GateKind::MCRY, target, std::move(controls), angle};
}
Gate Gate::x(Qubit target) { return {GateKind::X, target, {}, 0.0}; }
Gate Gate::h(Qubit target) { return {GateKind::H, target, {}, 0.0}; }
Gate Gate::z(Qubit target) { return {GateKind::Z, target, {}, 0.0}; }
Gate Gate::cx(Qubit control, Qubit target) { return {GateKind::CX, target, {control}, 0.0}; }
Gate Gate::mcx(std::vector<Qubit> controls, Qubit target) {
    return {GateKind::MCX, target, std::move(controls), 0.0};
}
Gate Gate::rz(Qubit target, double angle) { return {GateKind::RZ, target, {}, angle}; }
Gate Gate::sx(Qubit target) { return {GateKind::SX, target, {}, 0.0}; }

bool Gate::has_angle() const noexcept {
    return kind == GateKind::RY || kind == GateKind::CRY || kind == GateKind::MCRY ||
           kind == GateKind::RZ;
}

void Gate::validate(std::size_t num_qubits) const {
    const auto name = std::string(to_string(kind));
    if (target >= num_qubits) {
        throw InvalidGate(name + ": target " + std::to_string(target) + " out of range for " +
                          std::to_string(num_qubits) + " qubits");
    }
    std::size_t expected_min = 0;
    std::size_t expected_max = 0;
    switch (kind) {
    case GateKind::CRY:
    case GateKind::CX: expected_min = expected_max = 1; break;
    case GateKind::MCRY:
    case GateKind::MCX:
        expected_min = 1;
        expected_max = num_qubits - 1;
        break;
    default: break;
    }
    if (controls.size() < expected_min || controls.size() > expected_max) {
        throw InvalidGate(name + ": wrong number of controls (" + std::to_string(controls.size()) +
                          ")");
    }
    for (std::size_t i = 0; i < controls.size(); ++i) {
        if (controls[i] >= num_qubits) {
            throw InvalidGate(name + ": control " + std::to_string(controls[i]) +
                              " out of range");
        }
        if (controls[i] == target) throw InvalidGate(name + ": control equals target");
        for (std::size_t j = 0; j < i; ++j) {
            if (controls[j] == controls[i]) throw InvalidGate(name + ": duplicate control");
        }
    }
    if (!std::isfinite(angle)) throw InvalidGate(name + ": non-finite angle");
}

Circuit::Circuit(std::size_t num_qubits, std::string label)
    : num_qubits_(num_qubits), label_(std::move(label)) {
    if (num_qubits == 0 || num_qubits > 62) {
        throw InvalidGate("circuit: qubit count must be in 1..62");
    }
}

Circuit& Circuit::append(Gate gate) {
    gate.validate(num_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.num_qubits_ != num_qubits_) {
        throw InvalidGate("circuit: cannot append a circuit on a different register");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit Circuit::inverse() const {
    Circuit inv(num_qubits_, label_.empty() ? std::string{} : label_ + "_dg");
    inv.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::SX) {
            inv.gates_.insert(inv.gates_.end(), 3, g);
            continue;
        }
        if (g.has_angle()) g.angle = -g.angle;
        inv.gates_.push_back(std::move(g));
    }
    return inv;
}

void Circuit::validate() const {
    for (const auto& g : gates_) g.validate(num_qubits_);
}

} // namespace catqae::qsim
