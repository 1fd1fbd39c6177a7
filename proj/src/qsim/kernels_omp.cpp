#include "catqae/qsim/kernels.hpp"

#include <bit>
#include <cstdint>

namespace catqae::qsim::kernels::parallel {

void apply_controlled(std::span<Amplitude> amps, unsigned target, std::uint64_t control_mask,
                      const Mat2& m) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t low = tbit - 1;
    Amplitude* data = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t kk = 0; kk < half; ++kk) {
        const auto k = static_cast<std::uint64_t>(kk);
        const std::uint64_t i0 = ((k & ~low) << 1) | (k & low);
        if ((i0 & control_mask) != control_mask) continue;
        const std::uint64_t i1 = i0 | tbit;
        const Amplitude a0 = data[i0];
        const Amplitude a1 = data[i1];
        data[i0] = m[0] * a0 + m[1] * a1;
        data[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_pauli_string(std::span<Amplitude> amps, std::uint64_t x_mask, std::uint64_t z_mask) {
    const auto dim = static_cast<std::int64_t>(amps.size());
    Amplitude* data = amps.data();
    if (z_mask != 0) {
#pragma omp parallel for schedule(static)
        for (std::int64_t ii = 0; ii < dim; ++ii) {
            const auto i = static_cast<std::uint64_t>(ii);
            if (std::popcount(i & z_mask) & 1) data[i] = -data[i];
        }
    }
    if (x_mask != 0) {
#pragma omp parallel for schedule(static)
        for (std::int64_t ii = 0; ii < dim; ++ii) {
            const auto i = static_cast<std::uint64_t>(ii);
            const std::uint64_t j = i ^ x_mask;
            if (i < j) std::swap(data[i], data[j]);
        }
    }
}

double probability_of_one(std::span<const Amplitude> amps, unsigned qubit) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const auto dim = static_cast<std::int64_t>(amps.size());
    const Amplitude* data = amps.data();
    double p = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : p)
    for (std::int64_t ii = 0; ii < dim; ++ii) {
        const auto i = static_cast<std::uint64_t>(ii);
        if (i & bit) p += std::norm(data[i]);
    }
    return p;
}

} // namespace catqae::qsim::kernels::parallel
