#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>

namespace catqae::qsim {

using Amplitude = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Amplitude, 4>;

/// Controlled single-target update: for every basis index whose control bits
/// are all set, the (target=0, target=1) amplitude pair is multiplied by `m`.
///
/// Two implementations with identical results: `serial` is the reference and
/// `parallel` splits the pair loop across OpenMP threads.
namespace kernels {

namespace serial {
void apply_controlled(std::span<Amplitude> amps, unsigned target, std::uint64_t control_mask,
                      const Mat2& m);
void apply_pauli_string(std::span<Amplitude> amps, std::uint64_t x_mask, std::uint64_t z_mask);
double probability_of_one(std::span<const Amplitude> amps, unsigned qubit);
} // namespace serial

namespace parallel {
void apply_controlled(std::span<Amplitude> amps, unsigned target, std::uint64_t control_mask,
                      const Mat2& m);
void apply_pauli_string(std::span<Amplitude> amps, std::uint64_t x_mask, std::uint64_t z_mask);
double probability_of_one(std::span<const Amplitude> amps, unsigned qubit);
} // namespace parallel

/// Register size at which dispatch switches to the parallel kernels.
inline constexpr unsigned kParallelThresholdQubits = 14;

} // namespace kernels
} // namespace catqae::qsim
