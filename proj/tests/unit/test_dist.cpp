#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"
#include "catqae/dist/binning.hpp"
#include "catqae/dist/lognormal.hpp"
#include "catqae/dist/normal.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace catqae;
using namespace catqae::dist;

namespace {

const LognormalParams kRef{11.4845, 0.667};
constexpr double kRefM = 362700.0;

double integrated_cdf(double x) {
    auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
    if (x <= 0.0) return 0.5 - boost::math::quadrature::gauss_kronrod<double, 61>::integrate(pdf, x, 0.0, 15, 1e-15);
    return 0.5 + boost::math::quadrature::gauss_kronrod<double, 61>::integrate(pdf, 0.0, x, 15, 1e-15);
}

} // namespace

TEST(Normal, CdfMatchesNumericIntegration) {
    for (double x : {-6.0, -3.1, -1.0, -0.2, 0.0, 0.4, 1.645, 2.5, 5.0}) {
        EXPECT_NEAR(normal_cdf(x), integrated_cdf(x), 1e-14) << x;
        EXPECT_NEAR(normal_cdf(x) + normal_sf(x), 1.0, 1e-15);
    }
}

TEST(Normal, InverseRoundTrip) {
    for (double p : {1e-12, 1e-6, 0.001, 0.05, 0.3, 0.5, 0.77, 0.975, 0.999999}) {
        EXPECT_NEAR(normal_cdf(normal_inv_cdf(p)), p, 1e-13 * std::max(1.0, p / 1e-3)) << p;
    }
    EXPECT_NEAR(normal_inv_cdf(0.975), 1.959963984540054, 1e-12);
}

TEST(Lognormal, AnalyticExcessMatchesQuadrature) {
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        const double mu = rng.uniform(6.0, 15.0), sigma = rng.uniform(0.1, 3.0);
        const double m = std::exp(mu + sigma * rng.uniform(-2.0, 4.0));
        const double q = reference::quadrature_excess(mu, sigma, m);
        EXPECT_NEAR(analytic_excess({mu, sigma}, m), q, 1e-9 * q);
    }
}

TEST(Lognormal, ReferenceScenarioExcess) {
    EXPECT_NEAR(analytic_excess(kRef, kRefM), 2834.0, 0.01 * 2834.0);
}

TEST(Lognormal, ExcessAtNonPositiveThresholdIsMeanMinusM) {
    EXPECT_NEAR(analytic_excess(kRef, 0.0), kRef.mean(), 1e-9 * kRef.mean());
    EXPECT_NEAR(analytic_excess(kRef, -100.0), kRef.mean() + 100.0, 1e-9 * kRef.mean());
}

TEST(Lognormal, CdfInverseAndMoments) {
    EXPECT_NEAR(lognormal_inv_cdf(kRef, 0.5), kRef.median(), 1e-9 * kRef.median());
    EXPECT_NEAR(lognormal_cdf(kRef, lognormal_inv_cdf(kRef, 0.95)), 0.95, 1e-12);
    EXPECT_NEAR(kRef.mean(), std::exp(kRef.mu + 0.5 * kRef.sigma * kRef.sigma), 1e-6);
    EXPECT_NEAR(std::log(lognormal_pdf(kRef, 1e5)), lognormal_log_pdf(kRef, 1e5), 1e-12);
}

TEST(Lognormal, FitRecoversParameters) {
    Rng rng(1);
    std::vector<double> x(200000);
    for (auto& v : x) v = std::exp(10.0 + 1.3 * normal_inv_cdf(rng.uniform()));
    const auto p = fit_lognormal(x);
    EXPECT_NEAR(p.mu, 10.0, 0.01);
    EXPECT_NEAR(p.sigma, 1.3, 0.01);
}

TEST(Lognormal, FitUsesPopulationSpread) {
    const std::vector<double> x{std::exp(1.0), std::exp(3.0)};
    const auto p = fit_lognormal(x);
    EXPECT_DOUBLE_EQ(p.mu, 2.0);
    EXPECT_NEAR(p.sigma, 1.0, 1e-15);
}

TEST(Lognormal, FitRejectsBadSamples) {
    EXPECT_THROW(fit_lognormal(std::vector<double>{5.0}), DomainError);
    EXPECT_THROW(fit_lognormal(std::vector<double>{5.0, -1.0}), DomainError);
    EXPECT_THROW(fit_lognormal(std::vector<double>{5.0, 5.0}), DomainError);
}

TEST(Binning, StructuralInvariantsForEveryScheme) {
    const std::vector<double> losses = [] {
        Rng rng(4);
        std::vector<double> v(5000);
        for (auto& x : v) x = std::exp(9.0 + 2.0 * normal_inv_cdf(rng.uniform()));
        return v;
    }();
    for (auto scheme : {BinScheme::EqualWidth, BinScheme::Quantile, BinScheme::LogSpaced}) {
        for (std::size_t n = 1; n <= 8; ++n) {
            for (const LossSource& src : {LossSource{kRef}, LossSource{EmpiricalSource{losses}}}) {
                const auto b = discretize(src, scheme, n);
                EXPECT_NO_THROW(b.validate());
                EXPECT_EQ(b.size(), std::size_t{1} << n);
                double total = 0.0;
                for (double p : b.probs) total += p;
                EXPECT_NEAR(total, 1.0, 1e-12);
            }
        }
    }
}

TEST(Binning, ExactOnBinsIsTheDirectSum) {
    const auto b = discretize(kRef, BinScheme::EqualWidth, 5);
    for (double m : {0.0, 1e5, kRefM, 1e6, 1e9}) {
        EXPECT_NEAR(exact_on_bins(b, m), reference::direct_excess(b.probs, b.midpoints, m), 1e-9);
    }
    EXPECT_EQ(exact_on_bins(b, 1e12), 0.0);
}

TEST(Binning, EqualWidthDiscretisationFloor) {
    // Discretisation error of equal-width bins at the 95th percentile.
    const double truth = analytic_excess(kRef, kRefM);
    const std::vector<double> disc{505, 578, 557, 564, 566, 567};
    for (std::size_t n = 3; n <= 8; ++n) {
        const double d = truth - exact_on_bins(discretize(kRef, BinScheme::EqualWidth, n), kRefM);
        EXPECT_NEAR(d, disc[n - 3], 0.01 * disc[n - 3]) << n;
    }
    EXPECT_NEAR(exact_on_bins(discretize(kRef, BinScheme::EqualWidth, 3), kRefM), 2330.0, 0.01 * 2330.0);
}

TEST(Binning, LogSpacedSignedErrors) {
    const double truth = analytic_excess(kRef, kRefM);
    const std::vector<double> signed_err{-807, -117, 54};
    for (std::size_t n = 3; n <= 5; ++n) {
        const double d = truth - exact_on_bins(discretize(kRef, BinScheme::LogSpaced, n), kRefM);
        EXPECT_NEAR(d, signed_err[n - 3], 0.02 * std::abs(signed_err[n - 3])) << n;
    }
}

TEST(Binning, ParametricQuantileHasEqualMass) {
    const auto b = discretize(kRef, BinScheme::Quantile, 4);
    for (double p : b.probs) EXPECT_DOUBLE_EQ(p, 1.0 / 16.0);
}

TEST(Binning, EmpiricalQuantileBinsByRank) {
    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8};
    const auto b = discretize(EmpiricalSource{x}, BinScheme::Quantile, 2);
    EXPECT_EQ(b.probs, std::vector<double>(4, 0.25));
    EXPECT_EQ(b.midpoints, (std::vector<double>{1.5, 3.5, 5.5, 7.5}));
    EXPECT_EQ(b.edges, (std::vector<double>{1, 2.5, 4.5, 6.5, 8}));
    EXPECT_TRUE(std::holds_alternative<EmpiricalSummary>(b.source));
}

TEST(Binning, EmpiricalPercentileInterpolates) {
    const std::vector<double> x{10, 20, 30, 40, 50};
    EXPECT_DOUBLE_EQ(empirical_percentile(x, 50.0), 30.0);
    EXPECT_DOUBLE_EQ(empirical_percentile(x, 90.0), 46.0);
    EXPECT_DOUBLE_EQ(empirical_percentile(x, 12.5), 15.0);
    EXPECT_THROW(empirical_percentile(x, 100.0), DomainError);
    EXPECT_THROW(empirical_percentile(std::vector<double>{}, 50.0), DomainError);
}

TEST(Binning, RejectsBadQubitCounts) {
    EXPECT_THROW(discretize(kRef, BinScheme::EqualWidth, 0), DomainError);
    EXPECT_THROW(discretize(kRef, BinScheme::EqualWidth, 13), DomainError);
    EXPECT_EQ(parse_scheme("log_spaced"), BinScheme::LogSpaced);
    EXPECT_THROW(parse_scheme("octiles"), ConfigError);
}
