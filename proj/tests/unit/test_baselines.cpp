#include "catqae/baselines/estimators.hpp"
#include "catqae/baselines/sobol.hpp"
#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"
#include "catqae/dist/binning.hpp"
#include "catqae/dist/lognormal.hpp"
#include "catqae/harness/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace catqae;
using namespace catqae::baselines;

namespace {

const dist::LognormalParams kRef{11.4845, 0.667};
constexpr double kRefM = 362700.0;

template <class F>
std::vector<double> reps(int n, F f) {
    std::vector<double> out;
    for (int r = 0; r < n; ++r) out.push_back(f(static_cast<std::uint64_t>(1000 + r)));
    return out;
}

} // namespace

TEST(Sobol, FirstPointsAreVanDerCorputInGrayOrder) {
    const auto s = sobol_sequence(4, 0, false);
    EXPECT_EQ(s, (std::vector<double>{0.5, 0.75, 0.25, 0.375}));
    EXPECT_EQ(sobol_integers(2), (std::vector<std::uint32_t>{0x80000000u, 0xC0000000u}));
}

TEST(Sobol, FirstPowerOfTwoPointsAreStratified) {
    const auto s = sobol_sequence(1023, 0, false);
    // Points 1..1023 plus the skipped origin fill every 1/1024 cell exactly once.
    std::vector<int> cells(1024, 0);
    cells[0] = 1;
    for (double x : s) ++cells[static_cast<std::size_t>(x * 1024)];
    for (int c : cells) EXPECT_EQ(c, 1);
}

TEST(Sobol, ScramblingKeepsLowDiscrepancy) {
    const std::size_t n = 4096;
    Rng rng(5);
    std::vector<double> random(n);
    for (auto& x : random) x = rng.uniform();
    const double d_sobol = star_discrepancy(sobol_sequence(n, 17, true));
    const double d_random = star_discrepancy(random);
    EXPECT_LT(d_sobol, 4.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
    EXPECT_LT(d_sobol * 10.0, d_random);
    EXPECT_NE(sobol_sequence(8, 1, true), sobol_sequence(8, 2, true));
}

TEST(Sobol, StarDiscrepancyOfKnownSets) {
    EXPECT_DOUBLE_EQ(star_discrepancy({0.5}), 0.5);
    EXPECT_NEAR(star_discrepancy({0.125, 0.375, 0.625, 0.875}), 0.125, 1e-15);
}

TEST(Estimators, QueriesEqualBudgetAndNames) {
    const auto b = dist::discretize(kRef, dist::BinScheme::EqualWidth, 3);
    std::vector<double> losses{1e5, 2e5, 5e5, 1e6};
    const std::vector<EstimatorResult> all{
        naive_mc(kRef, kRefM, 777, 1), conditional_tail_mc(kRef, kRefM, 777, 1),
        importance_sampling_mc(kRef, kRefM, 777, 1), qmc_sobol(kRef, kRefM, 777, 1),
        binned_mc(b, kRefM, 777, 1), empirical_resample_mc(losses, kRefM, 777, 1)};
    const std::vector<std::string> names{"naive", "conditional_tail", "importance", "qmc", "binned", "naive_resample"};
    for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(all[i].queries, 777u);
        EXPECT_EQ(all[i].estimator, names[i]);
        EXPECT_EQ(all[i].seed, 1u);
    }
}

TEST(Estimators, ZeroBudgetRejected) {
    EXPECT_THROW(naive_mc(kRef, kRefM, 0, 1), DomainError);
    EXPECT_THROW(qmc_sobol(kRef, kRefM, 0, 1), DomainError);
}

TEST(Estimators, DeterministicInSeed) {
    EXPECT_EQ(naive_mc(kRef, kRefM, 500, 9).estimate, naive_mc(kRef, kRefM, 500, 9).estimate);
    EXPECT_NE(naive_mc(kRef, kRefM, 500, 9).estimate, naive_mc(kRef, kRefM, 500, 10).estimate);
}

TEST(Estimators, AllUnbiasedForTheirTarget) {
    const double truth = dist::analytic_excess(kRef, kRefM);
    const auto b = dist::discretize(kRef, dist::BinScheme::EqualWidth, 4);
    const double bins = dist::exact_on_bins(b, kRefM);
    const int n = 400;
    const std::uint64_t budget = 4096;
    auto check = [&](const std::vector<double>& e, double target, const char* name) {
        const double se = harness::stddev(e) / std::sqrt(static_cast<double>(e.size()));
        EXPECT_NEAR(harness::mean(e), target, 4.0 * se + 1e-9) << name;
    };
    check(reps(n, [&](auto s) { return naive_mc(kRef, kRefM, budget, s).estimate; }), truth, "naive");
    check(reps(n, [&](auto s) { return conditional_tail_mc(kRef, kRefM, budget, s).estimate; }), truth, "ct");
    check(reps(n, [&](auto s) { return importance_sampling_mc(kRef, kRefM, budget, s).estimate; }), truth, "is");
    check(reps(n, [&](auto s) { return qmc_sobol(kRef, kRefM, budget, s).estimate; }), truth, "qmc");
    check(reps(n, [&](auto s) { return binned_mc(b, kRefM, budget, s).estimate; }), bins, "binned");
}

TEST(Estimators, VarianceReductionOrdering) {
    const double truth = dist::analytic_excess(kRef, kRefM);
    auto rmse_of = [&](auto f) { return harness::rmse(reps(100, f), truth); };
    const double naive = rmse_of([&](auto s) { return naive_mc(kRef, kRefM, 8192, s).estimate; });
    const double ct = rmse_of([&](auto s) { return conditional_tail_mc(kRef, kRefM, 8192, s).estimate; });
    const double is = rmse_of([&](auto s) { return importance_sampling_mc(kRef, kRefM, 8192, s).estimate; });
    const double qmc = rmse_of([&](auto s) { return qmc_sobol(kRef, kRefM, 8192, s).estimate; });
    EXPECT_LT(ct, naive);
    EXPECT_LT(is, naive);
    EXPECT_LT(qmc, naive);
}

TEST(Estimators, ThresholdAtOrBelowZeroGivesMeanMinusM) {
    // With M <= 0 every draw contributes; conditional tail reduces to the mean.
    const auto e = reps(200, [&](auto s) { return conditional_tail_mc(kRef, 0.0, 4096, s).estimate; });
    EXPECT_NEAR(harness::mean(e), kRef.mean(), 0.01 * kRef.mean());
}

TEST(Estimators, DegenerateSpreadIsExact) {
    const dist::LognormalParams tight{std::log(1000.0), 1e-12};
    EXPECT_NEAR(naive_mc(tight, 400.0, 64, 3).estimate, 600.0, 1e-6);
    EXPECT_DOUBLE_EQ(naive_mc(tight, 5000.0, 64, 3).estimate, 0.0);
}

TEST(Estimators, ImportanceWithoutTiltIsNaive) {
    // Below the tilt threshold the proposal equals the target and weights are exactly 1.
    const double m = kRef.median();
    EXPECT_EQ(tilt(kRef, m), 0.0);
    EXPECT_EQ(importance_sampling_mc(kRef, m, 1000, 5).estimate, naive_mc(kRef, m, 1000, 5).estimate);
    EXPECT_GT(tilt(kRef, kRefM), 0.0);
}

TEST(Estimators, EmpiricalResamplingTargetsSampleExcess) {
    const std::vector<double> x{1.0, 2.0, 3.0, 10.0};
    const auto e = reps(300, [&](auto s) { return empirical_resample_mc(x, 2.5, 2000, s).estimate; });
    EXPECT_NEAR(harness::mean(e), (0.5 + 7.5) / 4.0, 0.02);
}
