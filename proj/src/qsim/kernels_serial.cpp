#include "catqae/qsim/kernels.hpp"

#include <bit>

namespace catqae::qsim::kernels::serial {

void apply_controlled(std::span<Amplitude> amps, unsigned target, std::uint64_t control_mask,
                      const Mat2& m) {
    const std::uint64_t half = amps.size() / 2;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t low = tbit - 1;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = ((k & ~low) << 1) | (k & low);
        if ((i0 & control_mask) != control_mask) continue;
        const std::uint64_t i1 = i0 | tbit;
        const Amplitude a0 = amps[i0];
        const Amplitude a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_pauli_string(std::span<Amplitude> amps, std::uint64_t x_mask, std::uint64_t z_mask) {
    const std::uint64_t dim = amps.size();
    if (z_mask != 0) {
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (std::popcount(i & z_mask) & 1) amps[i] = -amps[i];
        }
    }
    if (x_mask != 0) {
        for (std::uint64_t i = 0; i < dim; ++i) {
            const std::uint64_t j = i ^ x_mask;
            if (i < j) std::swap(amps[i], amps[j]);
        }
    }
}

double probability_of_one(std::span<const Amplitude> amps, unsigned qubit) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & bit) p += std::norm(amps[i]);
    }
    return p;
}

} // namespace catqae::qsim::kernels::serial
