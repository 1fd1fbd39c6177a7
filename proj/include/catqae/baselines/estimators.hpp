#pragma once

#include "catqae/core/estimator_result.hpp"
#include "catqae/dist/binning.hpp"
#include "catqae/dist/lognormal.hpp"

#include <cstdint>
#include <span>

namespace catqae::baselines {

// Every estimator draws exactly `budget` samples and reports queries = budget.
// A zero budget throws DomainError.

/// Mean of (X - M)^+ over i.i.d. inverse-CDF draws.
EstimatorResult naive_mc(const dist::LognormalParams& params, double threshold,
                         std::uint64_t budget, std::uint64_t seed, std::uint64_t rep_index = 0);

/// P(X > M) times the mean excess of draws from X | X > M (truncated inverse CDF).
/// Returns $0 when the tail mass underflows to zero.
EstimatorResult conditional_tail_mc(const dist::LognormalParams& params, double threshold,
                                    std::uint64_t budget, std::uint64_t seed,
                                    std::uint64_t rep_index = 0);

/// Log-mean tilt delta = max(0, log M - mu - sigma^2/2).
double tilt(const dist::LognormalParams& params, double threshold);

/// Draws from Lognormal(mu + delta, sigma) weighted by the density ratio
/// (computed in log space). Uses the same uniforms as naive_mc, so delta = 0
/// reproduces it exactly.
EstimatorResult importance_sampling_mc(const dist::LognormalParams& params, double threshold,
                                       std::uint64_t budget, std::uint64_t seed,
                                       std::uint64_t rep_index = 0);

/// Categorical draws of bin index by p_i; mean of (x_i - M)^+.
EstimatorResult binned_mc(const dist::BinnedDistribution& binned, double threshold,
                          std::uint64_t budget, std::uint64_t seed, std::uint64_t rep_index = 0);

/// Inverse-CDF transform of a digitally shifted Sobol batch.
EstimatorResult qmc_sobol(const dist::LognormalParams& params, double threshold,
                          std::uint64_t budget, std::uint64_t seed, std::uint64_t rep_index = 0);

/// Bootstrap resampling of raw losses: mean of (x - M)^+ over `budget` draws
/// with replacement.
EstimatorResult empirical_resample_mc(std::span<const double> losses, double threshold,
                                      std::uint64_t budget, std::uint64_t seed,
                                      std::uint64_t rep_index = 0);

} // namespace catqae::baselines
