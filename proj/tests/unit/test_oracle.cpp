#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"
#include "catqae/dist/binning.hpp"
#include "catqae/dist/lognormal.hpp"
#include "catqae/harness/stats.hpp"
#include "catqae/oracle/oracle.hpp"
#include "catqae/qsim/statevector.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace catqae;
using namespace catqae::oracle;

namespace {

const dist::LognormalParams kRef{11.4845, 0.667};
constexpr double kRefM = 362700.0;

OracleSpec ref_oracle(std::size_t n) {
    return build_oracle(dist::discretize(kRef, dist::BinScheme::EqualWidth, n), kRefM);
}

double sin2(double x) { return std::sin(x) * std::sin(x); }

} // namespace

TEST(StatePrep, AmplitudesMatchRandomPmfs) {
    Rng rng(31);
    for (std::size_t n = 1; n <= 8; ++n) {
        for (int t = 0; t < 10; ++t) {
            const auto p = reference::random_pmf(n, rng, t % 3 == 0 ? 0.5 : 0.0);
            const auto sv = qsim::simulate(build_state_prep(reference::binned_from(p)));
            for (std::size_t i = 0; i < p.size(); ++i) {
                EXPECT_NEAR(std::norm(sv[i]), p[i], 1e-13);
                EXPECT_GE(sv[i].real(), -1e-15);
            }
        }
    }
}

TEST(StatePrep, ZeroMassSubtreeEmitsNoGates) {
    const auto full = build_state_prep(reference::binned_from({0.25, 0.25, 0.25, 0.25}));
    const auto half = build_state_prep(reference::binned_from({0.5, 0.5, 0.0, 0.0}));
    EXPECT_EQ(half.size() + 1, full.size());
    for (const auto& g : half.gates()) EXPECT_TRUE(std::isfinite(g.angle));
}

TEST(Oracle, ReadoutProbabilityFormulaMatchesSimulation) {
    for (std::size_t n = 3; n <= 8; ++n) {
        const auto o = ref_oracle(n);
        const auto sv = qsim::simulate(o.circuit_A);
        EXPECT_NEAR(sv.probability_of_one(o.ancilla()), o.true_readout_prob, 1e-10) << n;
        double expected = 0.0;
        for (std::size_t i = 0; i < o.binned.size(); ++i) expected += o.binned.probs[i] * o.normalized_payoff[i];
        EXPECT_NEAR(o.true_readout_prob, expected, 1e-15);
    }
}

TEST(Oracle, ReferenceScenarioQuantities) {
    const auto o = ref_oracle(3);
    EXPECT_NEAR(o.true_readout_prob, 0.0066, 0.01 * 0.0066);
    EXPECT_EQ(k_max(o.true_readout_prob), 9u);
    EXPECT_NEAR(recover_excess(o.true_readout_prob, o.f_max), 2330.0, 0.01 * 2330.0);
}

TEST(Oracle, PayoffAngleEncodesProbability) {
    for (double f : {0.0, 0.1, 0.5, 1.0}) EXPECT_NEAR(sin2(payoff_angle(f) / 2.0), f, 1e-15);
    EXPECT_DOUBLE_EQ(payoff_angle(1.0), std::numbers::pi);
}

TEST(Oracle, AmplificationLawForEveryK) {
    for (std::size_t n : {3u, 4u, 6u}) {
        const auto o = ref_oracle(n);
        const double theta = std::asin(std::sqrt(o.true_readout_prob));
        for (std::uint64_t k = 0; k <= *k_max(o.true_readout_prob); ++k) {
            const auto sv = qsim::simulate(build_amplified(o, k));
            const double law = sin2(static_cast<double>(2 * k + 1) * theta);
            EXPECT_NEAR(sv.probability_of_one(o.ancilla()), law, 1e-9);
            EXPECT_NEAR(amplified_readout_probability(o, k), law, 1e-12);
        }
    }
}

TEST(Oracle, DeamplifyRoundTrip) {
    for (std::uint64_t k = 0; k <= 12; ++k) {
        for (double frac : {0.05, 0.3, 0.7, 0.99}) {
            const double theta = frac * std::numbers::pi / (2.0 * static_cast<double>(2 * k + 1));
            EXPECT_NEAR(deamplify(sin2(static_cast<double>(2 * k + 1) * theta), k), sin2(theta), 1e-12);
        }
    }
    EXPECT_EQ(deamplify(0.0, 5), 0.0);
    EXPECT_DOUBLE_EQ(deamplify(0.3, 0), 0.3);
    EXPECT_NEAR(deamplify(1.0, 3), sin2(std::numbers::pi / 14.0), 1e-15);
}

TEST(Oracle, KMaxValuesAndMonotone) {
    EXPECT_EQ(k_max(0.0066), 9u);
    EXPECT_EQ(k_max(0.0040), 11u);
    EXPECT_EQ(k_max(0.13), 1u);
    EXPECT_EQ(k_max(0.6), 0u);
    EXPECT_FALSE(k_max(0.0).has_value());
    std::uint64_t prev = *k_max(1e-6);
    for (double p = 1e-6; p < 1.0; p *= 1.1) {
        const auto k = *k_max(p);
        EXPECT_LE(k, prev);
        EXPECT_LT(static_cast<double>(2 * k + 1) * std::asin(std::sqrt(p)), std::numbers::pi / 2.0);
        prev = k;
    }
}

TEST(Qae, RefusesUnsafeK) {
    const auto o = ref_oracle(3);
    EXPECT_THROW(qae_estimate(o, {10, 100, 1, 0}), SafetyError);
    EXPECT_THROW(QaeSampler(o, 10), SafetyError);
    EXPECT_NO_THROW(qae_estimate(o, {9, 100, 1, 0}));
}

TEST(Qae, QueriesAndConvergence) {
    const auto o = ref_oracle(3);
    const double bins = dist::exact_on_bins(o.binned, kRefM);
    const auto r = qae_estimate(o, {3, 1000, 5, 2});
    EXPECT_EQ(r.queries, 7000u);
    EXPECT_EQ(r.estimator, "qae");
    EXPECT_EQ(r.rep_index, 2u);
    EXPECT_NEAR(qae_estimate(o, {0, 4000000, 5, 0}).estimate, bins, 0.01 * bins);
}

TEST(Qae, SamplerMatchesCircuitPath) {
    const auto o = ref_oracle(3);
    const QaeSampler s(o, 4);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EXPECT_EQ(s.run(500, seed, 0).estimate, qae_estimate(o, {4, 500, seed, 0}).estimate);
    }
}

TEST(Qae, AmplificationReducesError) {
    const auto o = ref_oracle(3);
    const double bins = dist::exact_on_bins(o.binned, kRefM);
    auto rmse_at = [&](std::uint64_t k) {
        const QaeSampler s(o, k);
        std::vector<double> e;
        for (std::uint64_t r = 0; r < 200; ++r) e.push_back(s.run(1000, r, r).estimate);
        return harness::rmse(e, bins);
    };
    EXPECT_LT(rmse_at(6) * 4.0, rmse_at(0));
}

TEST(Qae, DegenerateOracleIsFreeAndExact) {
    const auto o = build_oracle(dist::discretize(kRef, dist::BinScheme::EqualWidth, 3), 1e12);
    EXPECT_TRUE(o.degenerate());
    const auto r = QaeSampler(o, 0).run(100, 1, 0);
    EXPECT_EQ(r.estimate, 0.0);
    EXPECT_EQ(r.queries, 0u);
}

TEST(Qae, NoisyPathIsUpwardBiased) {
    const auto o = ref_oracle(3);
    const auto clean = qae_estimate_noisy(o, {3, 2000, 4, 0}, qsim::NoisePreset::noiseless());
    const auto low = qae_estimate_noisy(o, {3, 2000, 4, 0}, qsim::NoisePreset::low());
    const double bins = dist::exact_on_bins(o.binned, kRefM);
    EXPECT_NEAR(clean.estimate, bins, 0.1 * bins);
    EXPECT_GT(low.estimate, 1.5 * bins);
    EXPECT_EQ(low.queries, 14000u);
}
