#pragma once

#include <cstdint>
#include <vector>

namespace catqae::baselines {

/// First Sobol dimension as 32-bit integers, Gray-code order, starting at
/// index 1 (the all-zero point is skipped). Point i is the base-2 radical
/// inverse of gray(i): 2^31, 3*2^30, 2^30, 3*2^29, ...
std::vector<std::uint32_t> sobol_integers(std::size_t count);

/// Random digital shift for a repetition: 32 bits drawn from `seed`.
std::uint32_t digital_shift(std::uint64_t seed);

/// One-dimensional Sobol points in [0, 1). With `scramble`, every point is
/// XORed with digital_shift(seed); otherwise the seed is ignored.
std::vector<double> sobol_sequence(std::size_t count, std::uint64_t seed, bool scramble);

/// Star discrepancy D*_N of a one-dimensional point set (exact, O(N log N)).
double star_discrepancy(std::vector<double> points);

} // namespace catqae::baselines
