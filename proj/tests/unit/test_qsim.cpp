#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"
#include "catqae/qsim/circuit.hpp"
#include "catqae/qsim/kernels.hpp"
#include "catqae/qsim/noise.hpp"
#include "catqae/qsim/sampling.hpp"
#include "catqae/qsim/statevector.hpp"
#include "catqae/qsim/transpile.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace catqae;
using namespace catqae::qsim;

namespace {

using Matrix = std::vector<std::vector<Amplitude>>;

// Dense reference: builds the full 2^n matrix of a (multi-)controlled 2x2 gate by hand.
Matrix dense_controlled(std::size_t n, const std::vector<Qubit>& controls, Qubit target, const Mat2& m) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix u(dim, std::vector<Amplitude>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        bool active = true;
        for (auto c : controls) active = active && ((col >> c) & 1u);
        if (!active) {
            u[col][col] = 1.0;
            continue;
        }
        const std::size_t bit = (col >> target) & 1u;
        const std::size_t base = col & ~(std::size_t{1} << target);
        const std::size_t one = base | (std::size_t{1} << target);
        u[base][col] = m[0 * 2 + bit];
        u[one][col] = m[1 * 2 + bit];
    }
    return u;
}

std::vector<Amplitude> multiply(const Matrix& u, const std::vector<Amplitude>& v) {
    std::vector<Amplitude> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += u[i][j] * v[j];
    }
    return out;
}

double max_diff(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

Circuit random_circuit(std::size_t n, std::size_t gates, Rng& rng) {
    Circuit c(n);
    for (std::size_t g = 0; g < gates; ++g) {
        const auto t = static_cast<Qubit>(rng.below(n));
        const auto o = static_cast<Qubit>((t + 1 + rng.below(n - 1)) % n);
        const double a = rng.uniform(-3.0, 3.0);
        switch (rng.below(8)) {
        case 0: c.append(Gate::ry(t, a)); break;
        case 1: c.append(Gate::cry(o, t, a)); break;
        case 2: c.append(Gate::h(t)); break;
        case 3: c.append(Gate::x(t)); break;
        case 4: c.append(Gate::z(t)); break;
        case 5: c.append(Gate::cx(o, t)); break;
        case 6: c.append(Gate::rz(t, a)); break;
        default: {
            std::vector<Qubit> cs;
            for (Qubit q = 0; q < n; ++q) {
                if (q != t && rng.bernoulli(0.6)) cs.push_back(q);
            }
            if (cs.empty()) cs.push_back(o);
            if (rng.bernoulli(0.5)) c.append(Gate::mcry(cs, t, a));
            else c.append(Gate::mcx(cs, t));
        }
        }
    }
    return c;
}

} // namespace

TEST(Gates, RyMatrixConvention) {
    const Mat2 m = gate_matrix(GateKind::RY, 0.8);
    EXPECT_NEAR(m[0].real(), std::cos(0.4), 1e-15);
    EXPECT_NEAR(m[1].real(), -std::sin(0.4), 1e-15);
    EXPECT_NEAR(m[2].real(), std::sin(0.4), 1e-15);
    EXPECT_NEAR(m[3].real(), std::cos(0.4), 1e-15);
}

TEST(Gates, McryMatchesDenseEightByEight) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = rng.uniform(-3.0, 3.0);
        const auto in = reference::random_state(3, rng);
        const auto out = apply_gate(in, Gate::mcry({0, 2}, 1, a));
        const auto ref = multiply(dense_controlled(3, {0, 2}, 1, gate_matrix(GateKind::RY, a)), in.amplitudes());
        EXPECT_LT(max_diff(out.amplitudes(), ref), 1e-14);
    }
}

TEST(Gates, EveryKindMatchesDenseReference) {
    Rng rng(4);
    const auto in = reference::random_state(3, rng);
    const std::vector<std::pair<Gate, std::vector<Qubit>>> cases{
        {Gate::x(2), {}},          {Gate::h(0), {}},          {Gate::z(1), {}},
        {Gate::sx(1), {}},         {Gate::rz(0, 1.1), {}},    {Gate::ry(2, -0.4), {}},
        {Gate::cx(0, 2), {0}},     {Gate::cry(2, 0, 0.7), {2}}, {Gate::mcx({0, 1}, 2), {0, 1}},
    };
    for (const auto& [g, controls] : cases) {
        const auto ref = multiply(dense_controlled(3, controls, g.target, gate_matrix(g.kind, g.angle)), in.amplitudes());
        EXPECT_LT(max_diff(apply_gate(in, g).amplitudes(), ref), 1e-14) << to_string(g.kind);
    }
}

TEST(Gates, InvalidGatesRejected) {
    Circuit c(3);
    EXPECT_THROW(c.append(Gate::cx(1, 1)), InvalidGate);
    EXPECT_THROW(c.append(Gate::x(3)), InvalidGate);
    EXPECT_THROW(c.append(Gate::mcry({0, 0}, 2, 0.1)), InvalidGate);
}

TEST(Statevector, StartsInZeroState) {
    const Statevector s(4);
    EXPECT_EQ(s.dimension(), 16u);
    EXPECT_EQ(s[0], Amplitude(1.0, 0.0));
    EXPECT_DOUBLE_EQ(s.norm(), 1.0);
}

TEST(Statevector, LittleEndianQubitOrder) {
    Circuit c(3);
    c.append(Gate::x(0));
    const auto s = simulate(c);
    EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(s.probability_of_one(0), 1.0);
    EXPECT_DOUBLE_EQ(s.probability_of_one(2), 0.0);
}

TEST(Statevector, NormPreservedAndInverseUndoes) {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        const auto c = random_circuit(5, 60, rng);
        const auto in = reference::random_state(5, rng);
        const auto out = simulate(c, in);
        EXPECT_NEAR(out.norm(), 1.0, 1e-12);
        const auto back = simulate(c.inverse(), out);
        EXPECT_LT(max_diff(back.amplitudes(), in.amplitudes()), 1e-12);
    }
}

TEST(Kernels, SerialAndParallelAgree) {
    Rng rng(5);
    const std::size_t n = kernels::kParallelThresholdQubits + 2;
    const auto s = reference::random_state(n, rng);
    for (int t = 0; t < 6; ++t) {
        auto a = s.amplitudes();
        auto b = s.amplitudes();
        const unsigned target = static_cast<unsigned>(rng.below(n));
        std::uint64_t mask = rng.next_u64() & ((std::uint64_t{1} << n) - 1) & ~(std::uint64_t{1} << target);
        if (t == 0) mask = 0;
        const Mat2 m = gate_matrix(GateKind::RY, rng.uniform(-3.0, 3.0));
        kernels::serial::apply_controlled(a, target, mask, m);
        kernels::parallel::apply_controlled(b, target, mask, m);
        EXPECT_EQ(a, b);
        const std::uint64_t x = rng.next_u64() & ((std::uint64_t{1} << n) - 1);
        const std::uint64_t z = rng.next_u64() & ((std::uint64_t{1} << n) - 1);
        kernels::serial::apply_pauli_string(a, x, z);
        kernels::parallel::apply_pauli_string(b, x, z);
        EXPECT_EQ(a, b);
        EXPECT_NEAR(kernels::serial::probability_of_one(a, target), kernels::parallel::probability_of_one(b, target),
                    1e-12);
    }
}

TEST(Sampling, FrequenciesConvergeToBornRule) {
    Circuit c(2);
    c.append(Gate::ry(0, 2.0 * std::asin(std::sqrt(0.3))));
    const auto s = simulate(c);
    const std::array<Qubit, 1> q{0};
    const auto h = sample_shots(s, q, 200000, 17);
    EXPECT_EQ(h.total(), 200000u);
    EXPECT_NEAR(h.frequency_of_one(0), 0.3, 0.005);
    EXPECT_EQ(h, sample_shots(s, q, 200000, 17));
}

TEST(Sampling, BitstringsAreLittleEndian) {
    Circuit c(2);
    c.append(Gate::x(0));
    const std::array<Qubit, 2> q{0, 1};
    const auto h = sample_shots(simulate(c), q, 10, 1);
    EXPECT_EQ(h.bitstrings().at("01"), 10u);
    EXPECT_EQ(to_bitstring(2, 3), "010");
}

TEST(Sampling, OutcomeSamplerHitsEveryNonzeroOutcome) {
    OutcomeSampler s({0.0, 0.5, 0.0, 0.5});
    Rng rng(2);
    std::array<int, 4> seen{};
    for (int i = 0; i < 1000; ++i) ++seen[s.draw(rng)];
    EXPECT_EQ(seen[0], 0);
    EXPECT_EQ(seen[2], 0);
    EXPECT_GT(seen[1], 400);
    EXPECT_GT(seen[3], 400);
}

TEST(Noise, PresetsByName) {
    EXPECT_TRUE(NoisePreset::from_name("noiseless").is_noiseless());
    EXPECT_EQ(NoisePreset::from_name("medium"), NoisePreset::medium());
    EXPECT_DOUBLE_EQ(NoisePreset::low().p_2q, 0.01);
    EXPECT_THROW(NoisePreset::from_name("extreme"), ConfigError);
    NoisePreset bad;
    bad.p_1q = 1.5;
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Noise, NoiselessMatchesIdealSampling) {
    Circuit c(3);
    c.append(Gate::h(0)).append(Gate::cx(0, 1)).append(Gate::ry(2, 0.9));
    const std::array<Qubit, 3> q{0, 1, 2};
    const auto noisy = noisy_execute(c, NoisePreset::noiseless(), q, 40000, 9);
    const auto ideal = marginal_distribution(simulate(c), q);
    for (std::uint64_t o = 0; o < 8; ++o) EXPECT_NEAR(noisy.frequency(o), ideal[o], 0.01);
}

TEST(Noise, ReadoutFlipsOnly) {
    Circuit c(1);
    c.append(Gate::x(0));
    NoisePreset p;
    p.name = "readout";
    p.p_readout = 0.1;
    const std::array<Qubit, 1> q{0};
    const auto h = noisy_execute(c, p, q, 50000, 3);
    EXPECT_NEAR(h.frequency_of_one(0), 0.9, 0.01);
}

TEST(Noise, FullDepolarizingOnTwoQubitsScrambles) {
    // p=1 on a CX applies a uniform Pauli from 16 (identity included): the output is maximally mixed.
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    NoisePreset p;
    p.name = "full";
    p.p_2q = 1.0;
    const std::array<Qubit, 2> q{0, 1};
    const auto h = noisy_execute(c, p, q, 80000, 4);
    for (std::uint64_t o = 0; o < 4; ++o) EXPECT_NEAR(h.frequency(o), 0.25, 0.01);
}

TEST(Noise, DeterministicInSeed) {
    Rng rng(8);
    const auto c = random_circuit(4, 30, rng);
    const std::array<Qubit, 1> q{3};
    EXPECT_EQ(noisy_execute(c, NoisePreset::high(), q, 500, 77), noisy_execute(c, NoisePreset::high(), q, 500, 77));
}

TEST(Transpile, RandomCircuitsEquivalentUpToGlobalPhase) {
    Rng rng(21);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 2 + rng.below(4);
        const auto c = random_circuit(n, 25, rng);
        const auto basis = transpile_to_basis(c);
        ASSERT_TRUE(is_basis_circuit(basis.circuit));
        qsim::Amplitude phase{};
        for (int s = 0; s < 3; ++s) {
            const auto in = reference::random_state(n, rng);
            const auto a = simulate(c, in);
            const auto b = simulate(basis.circuit, in);
            if (s == 0) phase = reference::relative_phase(a, b);
            EXPECT_LT(reference::distance_with_phase(a, b, phase), 1e-10);
        }
    }
}

TEST(Transpile, MetricsCountBasisGates) {
    Circuit c(2);
    c.append(Gate::cx(0, 1)).append(Gate::rz(0, 0.3)).append(Gate::sx(1)).append(Gate::cx(1, 0));
    const auto m = measure(c);
    EXPECT_EQ(m.two_qubit_count, 2u);
    EXPECT_EQ(m.total_gates, 4u);
    EXPECT_EQ(m.depth, 3u);
    EXPECT_EQ(circuit_depth(c), 3u);
}

TEST(Transpile, McxTwoQubitCountGrowsWithControls) {
    std::size_t prev = 0;
    for (std::size_t k = 1; k <= 5; ++k) {
        std::vector<Qubit> cs;
        for (std::size_t i = 0; i < k; ++i) cs.push_back(i);
        Circuit c(k + 1);
        c.append(Gate::mcx(cs, k));
        const auto two = transpile_to_basis(c).metrics.two_qubit_count;
        EXPECT_GT(two, prev);
        prev = two;
    }
}
