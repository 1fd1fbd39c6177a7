#include "catqae/qsim/noise.hpp"

#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace catqae::qsim {

NoisePreset NoisePreset::noiseless() { return {"noiseless", 0.0, 0.0, 0.0}; }
NoisePreset NoisePreset::low() { return {"low", 0.001, 0.01, 0.005}; }
NoisePreset NoisePreset::medium() { return {"medium", 0.005, 0.05, 0.02}; }
NoisePreset NoisePreset::high() { return {"high", 0.01, 0.10, 0.05}; }

NoisePreset NoisePreset::from_name(std::string_view name) {
    if (name == "noiseless") return noiseless();
    if (name == "low") return low();
    if (name == "medium") return medium();
    if (name == "high") return high();
    throw ConfigError("unknown noise preset '" + std::string(name) + "'");
}

void NoisePreset::validate() const {
    for (double p : {p_1q, p_2q, p_readout}) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("noise rate outside [0, 1]");
    }
    if (name == "noiseless" && !is_noiseless()) {
        throw DomainError("preset named noiseless carries nonzero rates");
    }
}

namespace {

// Noiseless prefix states, kept every `stride` gates so that a trajectory can
// resume from just before its first error.
class PrefixCache {
public:
    PrefixCache(const Circuit& circuit, std::size_t max_amplitudes) : circuit_(circuit) {
        const std::size_t gates = circuit.size();
        const std::size_t dim = std::size_t{1} << circuit.num_qubits();
        stride_ = std::max<std::size_t>(1, (gates + 1) * dim / std::max<std::size_t>(1, max_amplitudes));
        Statevector s(circuit.num_qubits());
        checkpoints_.push_back(s);
        for (std::size_t g = 0; g < gates; ++g) {
            s.apply(circuit.gates()[g]);
            if ((g + 1) % stride_ == 0) checkpoints_.push_back(s);
        }
        final_ = std::move(s);
    }

    /// State after the first `applied` gates.
    Statevector prefix(std::size_t applied) const {
        const std::size_t c = applied / stride_;
        Statevector s = checkpoints_[c];
        for (std::size_t g = c * stride_; g < applied; ++g) s.apply(circuit_.gates()[g]);
        return s;
    }

    const Statevector& final_state() const { return *final_; }

private:
    const Circuit& circuit_;
    std::size_t stride_ = 1;
    std::vector<Statevector> checkpoints_;
    std::optional<Statevector> final_;
};

double error_rate(const Gate& g, const NoisePreset& noise) {
    return g.arity() == 1 ? noise.p_1q : noise.p_2q;
}

// Uniform draw from the 4^k Paulis on the gate's qubits (identity included).
void apply_random_pauli(Statevector& s, const Gate& g, Rng& rng) {
    const std::size_t k = g.arity();
    std::uint64_t code = rng.below(std::uint64_t{1} << (2 * k));
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    auto assign = [&](Qubit q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (code & 3U) {
        case 1: x_mask |= bit; break;                 // X
        case 2: x_mask |= bit; z_mask |= bit; break;  // Y up to phase
        case 3: z_mask |= bit; break;                 // Z
        default: break;
        }
        code >>= 2;
    };
    assign(g.target);
    for (Qubit c : g.controls) assign(c);
    if (x_mask | z_mask) s.apply_pauli(x_mask, z_mask);
}

} // namespace

Histogram noisy_execute(const Circuit& circuit, const NoisePreset& noise,
                        std::span<const Qubit> measured_qubits, std::uint64_t shots,
                        std::uint64_t rng_seed) {
    noise.validate();
    circuit.validate();
    if (noise.is_noiseless()) {
        return sample_shots(simulate(circuit), measured_qubits, shots, rng_seed);
    }
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");

    const PrefixCache cache(circuit, std::size_t{1} << 22);
    const OutcomeSampler clean(marginal_distribution(cache.final_state(), measured_qubits));
    const auto& gates = circuit.gates();

    Rng rng(rng_seed);
    Histogram h;
    h.width = measured_qubits.size();
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        std::size_t first_error = gates.size();
        for (std::size_t g = 0; g < gates.size(); ++g) {
            const double p = error_rate(gates[g], noise);
            if (p > 0.0 && rng.uniform() < p) {
                first_error = g;
                break;
            }
        }

        std::uint64_t outcome;
        if (first_error == gates.size()) {
            outcome = clean.draw(rng);
        } else {
            Statevector s = cache.prefix(first_error + 1);
            apply_random_pauli(s, gates[first_error], rng);
            for (std::size_t g = first_error + 1; g < gates.size(); ++g) {
                s.apply(gates[g]);
                const double p = error_rate(gates[g], noise);
                if (p > 0.0 && rng.uniform() < p) apply_random_pauli(s, gates[g], rng);
            }
            outcome = OutcomeSampler(marginal_distribution(s, measured_qubits)).draw(rng);
        }

        if (noise.p_readout > 0.0) {
            for (std::size_t j = 0; j < measured_qubits.size(); ++j) {
                if (rng.uniform() < noise.p_readout) outcome ^= std::uint64_t{1} << j;
            }
        }
        ++h.counts[outcome];
    }
    return h;
}

} // namespace catqae::qsim
