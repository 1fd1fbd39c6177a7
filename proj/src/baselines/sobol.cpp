#include "catqae/baselines/sobol.hpp"

#include "catqae/core/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace catqae::baselines {

std::vector<std::uint32_t> sobol_integers(std::size_t count) {
    std::vector<std::uint32_t> out;
    out.reserve(count);
    // Direction numbers of dimension 1 are v_j = 2^(32 - j): point i differs
    // from point i-1 in the digit picked by the lowest zero bit of i-1.
    std::uint32_t x = 0;
    for (std::uint64_t i = 1; i <= count; ++i) {
        const int c = std::countr_one(i - 1);
        x ^= std::uint32_t{1} << (31 - c);
        out.push_back(x);
    }
    return out;
}

std::uint32_t digital_shift(std::uint64_t seed) {
    Rng rng(seed);
    return static_cast<std::uint32_t>(rng.next_u64() >> 32);
}

std::vector<double> sobol_sequence(std::size_t count, std::uint64_t seed, bool scramble) {
    const std::uint32_t shift = scramble ? digital_shift(seed) : 0U;
    std::vector<double> out;
    out.reserve(count);
    for (std::uint32_t x : sobol_integers(count)) out.push_back(static_cast<double>(x ^ shift) * 0x1.0p-32);
    return out;
}

double star_discrepancy(std::vector<double> points) {
    std::sort(points.begin(), points.end());
    const double n = static_cast<double>(points.size());
    double d = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double k = static_cast<double>(i);
        d = std::max({d, (k + 1.0) / n - points[i], points[i] - k / n});
    }
    return d;
}

} // namespace catqae::baselines
