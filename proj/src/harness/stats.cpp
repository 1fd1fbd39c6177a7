#include "catqae/harness/stats.hpp"

#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"
#include "catqae/dist/binning.hpp"

#include <cmath>
#include <numeric>

namespace catqae::harness {

double rmse(std::span<const double> estimates, double truth) {
    if (estimates.empty()) throw DomainError("rmse: no estimates");
    double ss = 0.0;
    for (double e : estimates) ss += (e - truth) * (e - truth);
    return std::sqrt(ss / static_cast<double>(estimates.size()));
}

double mean(std::span<const double> values) {
    if (values.empty()) throw DomainError("mean: no values");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    return rmse(values, mean(values));
}

LineFit ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("ols: need two or more paired points");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("ols: x has no spread");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

namespace {

double rms(const std::vector<double>& errors) {
    double ss = 0.0;
    for (double e : errors) ss += e * e;
    return std::sqrt(ss / static_cast<double>(errors.size()));
}

} // namespace

SlopeFit fit_loglog_slope(std::span<const double> budgets,
                          const std::vector<std::vector<double>>& errors,
                          std::size_t resamples, std::uint64_t seed) {
    if (budgets.size() != errors.size()) throw DomainError("fit_loglog_slope: budgets/errors size mismatch");
    if (budgets.size() < 3) throw DomainError("fit_loglog_slope: need at least 3 budgets");
    for (const auto& e : errors) {
        if (e.size() < 2) throw DomainError("fit_loglog_slope: need at least 2 repetitions per budget");
    }

    SlopeFit out;
    std::vector<std::size_t> used;
    std::vector<double> lx, ly;
    for (std::size_t b = 0; b < budgets.size(); ++b) {
        const double r = rms(errors[b]);
        if (!(r > 0.0) || !(budgets[b] > 0.0)) {
            out.warnings.push_back("budget " + std::to_string(static_cast<long long>(budgets[b])) +
                                   " has zero RMSE; excluded from the fit");
            continue;
        }
        used.push_back(b);
        lx.push_back(std::log(budgets[b]));
        ly.push_back(std::log(r));
    }
    if (used.size() < 2) throw DomainError("fit_loglog_slope: fewer than 2 usable budgets");
    const LineFit point = ols(lx, ly);
    out.slope = point.slope;
    out.intercept = point.intercept;
    out.r_squared = point.r_squared;
    out.points = used.size();

    Rng rng(seed);
    std::vector<double> slopes;
    slopes.reserve(resamples);
    std::vector<double> bx, by, draw;
    for (std::size_t s = 0; s < resamples; ++s) {
        bx.clear();
        by.clear();
        for (std::size_t k = 0; k < used.size(); ++k) {
            const auto& e = errors[used[k]];
            draw.resize(e.size());
            for (auto& d : draw) d = e[rng.below(e.size())];
            const double r = rms(draw);
            if (r > 0.0) {
                bx.push_back(lx[k]);
                by.push_back(std::log(r));
            }
        }
        if (bx.size() >= 2) slopes.push_back(ols(bx, by).slope);
    }
    if (slopes.empty()) {
        out.ci_low = out.ci_high = out.slope;
    } else {
        out.ci_low = dist::empirical_percentile(slopes, 2.5);
        out.ci_high = dist::empirical_percentile(slopes, 97.5);
    }
    return out;
}

} // namespace catqae::harness
