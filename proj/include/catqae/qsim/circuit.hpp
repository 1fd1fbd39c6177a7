#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace catqae::qsim {

using Qubit = std::size_t;

enum class GateKind { RY, CRY, MCRY, X, H, Z, CX, MCX, RZ, SX };

std::string_view to_string(GateKind kind);

/// A (possibly controlled) single-target gate.
///
/// CRY and CX take exactly one control; MCRY and MCX take one or more.
/// The remaining kinds are uncontrolled.
struct Gate {
    GateKind kind = GateKind::X;
    Qubit target = 0;
    std::vector<Qubit> controls;
    double angle = 0.0;  // radians; RY, CRY, MCRY and RZ only

    static Gate ry(Qubit target, double angle);
    static Gate cry(Qubit control, Qubit target, double angle);
    static Gate mcry(std::vector<Qubit> controls, Qubit target, double angle);
    static Gate x(Qubit target);
    static Gate h(Qubit target);
    static Gate z(Qubit target);
    static Gate cx(Qubit control, Qubit target);
    static Gate mcx(std::vector<Qubit> controls, Qubit target);
    static Gate rz(Qubit target, double angle);
    static Gate sx(Qubit target);

    bool has_angle() const noexcept;
    /// Number of distinct qubits the gate acts on.
    std::size_t arity() const noexcept { return controls.size() + 1; }

    /// Throws InvalidGate unless the gate is well formed on `num_qubits` qubits.
    void validate(std::size_t num_qubits) const;

    bool operator==(const Gate&) const = default;
};

/// Ordered gate list over a fixed register.
class Circuit {
public:
    explicit Circuit(std::size_t num_qubits, std::string label = {});

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }
    const std::string& label() const noexcept { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    /// Validates the gate against this register before appending.
    Circuit& append(Gate gate);
    /// Appends every gate of `other`; registers must match.
    Circuit& append(const Circuit& other);

    /// Adjoint circuit: reversed order, negated angles. SX is inverted as SX^3.
    Circuit inverse() const;

    void validate() const;

private:
    std::size_t num_qubits_;
    std::vector<Gate> gates_;
    std::string label_;
};

} // namespace catqae::qsim
