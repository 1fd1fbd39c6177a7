#include "catqae/qsim/transpile.hpp"

#include "catqae/core/errors.hpp"
#include "catqae/qsim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace catqae::qsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleEps = 1e-12;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);  // (-pi, pi]
    return a;
}

class BasisEmitter {
public:
    explicit BasisEmitter(Circuit& out) : out_(out) {}

    void rz(Qubit q, double angle) {
        angle = wrap_angle(angle);
        if (std::abs(angle) < kAngleEps) return;
        out_.append(Gate::rz(q, angle));
    }

    void cx(Qubit control, Qubit target) { out_.append(Gate::cx(control, target)); }

    // U = e^{ia} RZ(phi) RY(theta) RZ(lambda) = RZ(phi+pi) SX RZ(theta+pi) SX RZ(lambda).
    void one_qubit(Qubit q, const Mat2& u) {
        const std::complex<double> det = u[0] * u[3] - u[1] * u[2];
        const std::complex<double> scale = 1.0 / std::sqrt(det);
        const auto u00 = u[0] * scale;
        const auto u10 = u[2] * scale;
        const auto u11 = u[3] * scale;
        const double theta = 2.0 * std::atan2(std::abs(u10), std::abs(u00));
        double phi = 0.0;
        double lambda = 0.0;
        if (std::abs(u10) < kAngleEps) {
            phi = 2.0 * std::arg(u11);
        } else if (std::abs(u00) < kAngleEps) {
            phi = 2.0 * std::arg(u10);
        } else {
            const double sum = 2.0 * std::arg(u11);   // phi + lambda
            const double diff = 2.0 * std::arg(u10);  // phi - lambda
            phi = 0.5 * (sum + diff);
            lambda = 0.5 * (sum - diff);
        }
        if (std::abs(wrap_angle(theta)) < kAngleEps) {
            rz(q, phi + lambda);
            return;
        }
        rz(q, lambda);
        out_.append(Gate::sx(q));
        rz(q, theta + kPi);
        out_.append(Gate::sx(q));
        rz(q, phi + kPi);
    }

    void ry(Qubit q, double angle) {
        if (std::abs(wrap_angle(angle)) < kAngleEps) return;
        one_qubit(q, gate_matrix(GateKind::RY, angle));
    }

    void rotation(GateKind axis, Qubit q, double angle) {
        if (axis == GateKind::RY) ry(q, angle);
        else rz(q, angle);
    }

    // Uniformly controlled rotation: target angle alphas[c] for control state c
    // (bit j of c = controls[j]). Gray-code walk, 2^m rotations and 2^m CX.
    void multiplexed(GateKind axis, const std::vector<Qubit>& controls, Qubit target,
                     const std::vector<double>& alphas) {
        const std::size_t m = controls.size();
        const std::size_t count = std::size_t{1} << m;
        if (std::all_of(alphas.begin(), alphas.end(),
                        [](double a) { return std::abs(a) < kAngleEps; })) {
            return;
        }
        if (m == 0) {
            rotation(axis, target, alphas[0]);
            return;
        }
        const double norm = 1.0 / static_cast<double>(count);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t gray = i ^ (i >> 1);
            double angle = 0.0;
            for (std::size_t c = 0; c < count; ++c) {
                angle += (std::popcount(c & gray) & 1) ? -alphas[c] : alphas[c];
            }
            rotation(axis, target, angle * norm);
            const std::size_t next = (i + 1) % count;
            const std::size_t next_gray = next ^ (next >> 1);
            const auto bit = static_cast<std::size_t>(std::countr_zero(gray ^ next_gray));
            cx(controls[bit], target);
        }
    }

    // Diagonal unitary diag(exp(i phases[x])) over `qubits` (bit j of x = qubits[j]),
    // up to global phase. Peels the last qubit off as a multiplexed RZ.
    void diagonal(std::vector<Qubit> qubits, std::vector<double> phases) {
        while (!qubits.empty()) {
            const std::size_t top = std::size_t{1} << (qubits.size() - 1);
            std::vector<double> alphas(top);
            std::vector<double> rest(top);
            for (std::size_t c = 0; c < top; ++c) {
                alphas[c] = phases[c | top] - phases[c];
                rest[c] = 0.5 * (phases[c] + phases[c | top]);
            }
            const Qubit target = qubits.back();
            qubits.pop_back();
            multiplexed(GateKind::RZ, qubits, target, alphas);
            phases = std::move(rest);
        }
    }

private:
    Circuit& out_;
};

void lower_gate(const Gate& g, BasisEmitter& emit, Circuit& out) {
    switch (g.kind) {
    case GateKind::X:
    case GateKind::SX:
    case GateKind::CX: out.append(g); return;
    case GateKind::RZ: emit.rz(g.target, g.angle); return;
    case GateKind::RY:
    case GateKind::H:
    case GateKind::Z: emit.one_qubit(g.target, gate_matrix(g.kind, g.angle)); return;
    case GateKind::CRY:
    case GateKind::MCRY: {
        std::vector<double> alphas(std::size_t{1} << g.controls.size(), 0.0);
        alphas.back() = g.angle;
        emit.multiplexed(GateKind::RY, g.controls, g.target, alphas);
        return;
    }
    case GateKind::MCX: {
        if (g.controls.size() == 1) {
            emit.cx(g.controls[0], g.target);
            return;
        }
        emit.one_qubit(g.target, gate_matrix(GateKind::H, 0.0));
        std::vector<Qubit> qubits = g.controls;
        qubits.push_back(g.target);
        std::vector<double> phases(std::size_t{1} << qubits.size(), 0.0);
        phases.back() = kPi;
        emit.diagonal(std::move(qubits), std::move(phases));
        emit.one_qubit(g.target, gate_matrix(GateKind::H, 0.0));
        return;
    }
    }
    throw TranspileError("unsupported gate kind '" + std::string(to_string(g.kind)) + "'");
}

} // namespace

std::size_t circuit_depth(const Circuit& circuit) {
    std::vector<std::size_t> level(circuit.num_qubits(), 0);
    std::size_t depth = 0;
    for (const auto& g : circuit.gates()) {
        std::size_t layer = level[g.target];
        for (Qubit c : g.controls) layer = std::max(layer, level[c]);
        ++layer;
        level[g.target] = layer;
        for (Qubit c : g.controls) level[c] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

CircuitMetrics measure(const Circuit& circuit) {
    CircuitMetrics m;
    m.total_gates = circuit.size();
    m.depth = circuit_depth(circuit);
    m.two_qubit_count = static_cast<std::size_t>(
        std::count_if(circuit.gates().begin(), circuit.gates().end(),
                      [](const Gate& g) { return g.arity() >= 2; }));
    return m;
}

bool is_basis_circuit(const Circuit& circuit) {
    return std::all_of(circuit.gates().begin(), circuit.gates().end(), [](const Gate& g) {
        return g.kind == GateKind::CX || g.kind == GateKind::RZ || g.kind == GateKind::SX ||
               g.kind == GateKind::X;
    });
}

BasisCircuit transpile_to_basis(const Circuit& circuit) {
    Circuit out(circuit.num_qubits(),
                circuit.label().empty() ? std::string{} : circuit.label() + "_basis");
    BasisEmitter emit(out);
    for (const auto& g : circuit.gates()) lower_gate(g, emit, out);
    auto metrics = measure(out);
    return {std::move(out), metrics};
}

} // namespace catqae::qsim
