#include "catqae/baselines/estimators.hpp"

#include "catqae/baselines/sobol.hpp"
#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"
#include "catqae/dist/normal.hpp"
#include "catqae/qsim/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace catqae::baselines {

namespace {

void check_budget(std::uint64_t budget) {
    if (budget == 0) throw DomainError("estimator budget must be >= 1");
}

EstimatorResult make(double estimate, std::uint64_t budget, const char* name, std::uint64_t seed,
                     std::uint64_t rep_index) {
    return EstimatorResult{estimate, budget, name, seed, rep_index};
}

} // namespace

EstimatorResult naive_mc(const dist::LognormalParams& params, double threshold,
                         std::uint64_t budget, std::uint64_t seed, std::uint64_t rep_index) {
    check_budget(budget);
    params.validate();
    Rng rng(seed);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < budget; ++i) {
        const double x = std::exp(params.mu + params.sigma * dist::normal_inv_cdf(rng.uniform()));
        sum += std::max(0.0, x - threshold);
    }
    return make(sum / static_cast<double>(budget), budget, "naive", seed, rep_index);
}

EstimatorResult conditional_tail_mc(const dist::LognormalParams& params, double threshold,
                                    std::uint64_t budget, std::uint64_t seed,
                                    std::uint64_t rep_index) {
    check_budget(budget);
    params.validate();
    const double tail = threshold > 0.0 ? dist::lognormal_sf(params, threshold) : 1.0;
    if (!(tail > 0.0)) return make(0.0, budget, "conditional_tail", seed, rep_index);
    Rng rng(seed);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < budget; ++i) {
        // u ~ U(F(M), 1) written through the upper tail: 1 - u = tail * v.
        const double z = -dist::normal_inv_cdf(tail * rng.uniform());
        const double x = std::exp(params.mu + params.sigma * z);
        sum += std::max(0.0, x - threshold);
    }
    return make(tail * sum / static_cast<double>(budget), budget, "conditional_tail", seed, rep_index);
}

double tilt(const dist::LognormalParams& params, double threshold) {
    if (threshold <= 0.0) return 0.0;
    return std::max(0.0, std::log(threshold) - params.mu - 0.5 * params.sigma * params.sigma);
}

EstimatorResult importance_sampling_mc(const dist::LognormalParams& params, double threshold,
                                       std::uint64_t budget, std::uint64_t seed,
                                       std::uint64_t rep_index) {
    check_budget(budget);
    params.validate();
    const double delta = tilt(params, threshold);
    const double two_var = 2.0 * params.sigma * params.sigma;
    Rng rng(seed);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < budget; ++i) {
        const double log_x = params.mu + delta + params.sigma * dist::normal_inv_cdf(rng.uniform());
        const double excess = std::max(0.0, std::exp(log_x) - threshold);
        if (excess == 0.0) continue;
        // log f(x) - log g(x) for g = target shifted by delta in log space.
        // Negative wherever the payoff is positive, so exp() cannot overflow.
        const double log_w = (-2.0 * delta * (log_x - params.mu) + delta * delta) / two_var;
        sum += excess * std::exp(log_w);
    }
    return make(sum / static_cast<double>(budget), budget, "importance", seed, rep_index);
}

EstimatorResult binned_mc(const dist::BinnedDistribution& binned, double threshold,
                          std::uint64_t budget, std::uint64_t seed, std::uint64_t rep_index) {
    check_budget(budget);
    const qsim::OutcomeSampler sampler(binned.probs);
    Rng rng(seed);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < budget; ++i) {
        sum += std::max(0.0, binned.midpoints[sampler.draw(rng)] - threshold);
    }
    return make(sum / static_cast<double>(budget), budget, "binned", seed, rep_index);
}

EstimatorResult qmc_sobol(const dist::LognormalParams& params, double threshold,
                          std::uint64_t budget, std::uint64_t seed, std::uint64_t rep_index) {
    check_budget(budget);
    params.validate();
    const std::uint32_t shift = digital_shift(seed);
    double sum = 0.0;
    for (std::uint32_t v : sobol_integers(budget)) {
        // Centre of the dyadic cell keeps u off both endpoints.
        const double u = (static_cast<double>(v ^ shift) + 0.5) * 0x1.0p-32;
        const double x = std::exp(params.mu + params.sigma * dist::normal_inv_cdf(u));
        sum += std::max(0.0, x - threshold);
    }
    return make(sum / static_cast<double>(budget), budget, "qmc", seed, rep_index);
}

EstimatorResult empirical_resample_mc(std::span<const double> losses, double threshold,
                                      std::uint64_t budget, std::uint64_t seed,
                                      std::uint64_t rep_index) {
    check_budget(budget);
    if (losses.empty()) throw DomainError("empirical_resample_mc: empty sample");
    Rng rng(seed);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < budget; ++i) {
        sum += std::max(0.0, losses[rng.below(losses.size())] - threshold);
    }
    return make(sum / static_cast<double>(budget), budget, "naive_resample", seed, rep_index);
}

} // namespace catqae::baselines
