#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace catqae::harness {

/// sqrt(mean((e - truth)^2)). Throws DomainError on an empty vector.
double rmse(std::span<const double> estimates, double truth);
double mean(std::span<const double> values);
/// Population standard deviation, so rmse^2 = bias^2 + stddev^2.
double stddev(std::span<const double> values);

struct SlopeFit {
    std::string estimator;
    double slope = 0.0;
    double intercept = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;             // budgets used in the point fit
    std::vector<std::string> warnings;  // excluded budgets
};

/// Ordinary least squares y = a + b x; returns {b, a, R^2}.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};
LineFit ols(std::span<const double> x, std::span<const double> y);

/// Log-log slope of RMSE against budget with a percentile bootstrap CI.
///
/// errors[b] holds the signed per-repetition errors (estimate - truth) at
/// budgets[b]. Budgets whose RMSE is zero are dropped with a warning. Each
/// resample redraws every budget's repetitions with replacement and refits;
/// the CI is the 2.5th/97.5th percentile of the refitted slopes.
/// Needs at least 3 budgets and 2 repetitions per budget.
SlopeFit fit_loglog_slope(std::span<const double> budgets,
                          const std::vector<std::vector<double>>& errors,
                          std::size_t resamples, std::uint64_t seed);

} // namespace catqae::harness
