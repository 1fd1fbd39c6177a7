// Serial reference vs OpenMP kernels on a single RY sweep and a Pauli string.
#include "catqae/core/rng.hpp"
#include "catqae/qsim/kernels.hpp"
#include "catqae/qsim/statevector.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace catqae;
using namespace catqae::qsim;

namespace {

std::vector<Amplitude> state(unsigned n) {
    Rng rng(n);
    std::vector<Amplitude> a(std::size_t{1} << n);
    for (auto& z : a) z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return a;
}

template <auto Kernel>
void controlled(benchmark::State& st) {
    const auto n = static_cast<unsigned>(st.range(0));
    auto a = state(n);
    const Mat2 m = gate_matrix(GateKind::RY, 0.3);
    for (auto _ : st) {
        for (unsigned t = 0; t < n; ++t) Kernel(a, t, std::uint64_t{1} << ((t + 1) % n), m);
        benchmark::DoNotOptimize(a.data());
    }
    st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations()) * n * a.size() * sizeof(Amplitude));
}

template <auto Kernel>
void pauli(benchmark::State& st) {
    const auto n = static_cast<unsigned>(st.range(0));
    auto a = state(n);
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (auto _ : st) {
        Kernel(a, 0x5555555555555555ULL & mask, 0x3333333333333333ULL & mask);
        benchmark::DoNotOptimize(a.data());
    }
}

} // namespace

BENCHMARK(controlled<kernels::serial::apply_controlled>)->Name("controlled/serial")->DenseRange(14, 22, 4);
BENCHMARK(controlled<kernels::parallel::apply_controlled>)->Name("controlled/parallel")->DenseRange(14, 22, 4);
BENCHMARK(pauli<kernels::serial::apply_pauli_string>)->Name("pauli/serial")->DenseRange(14, 22, 4);
BENCHMARK(pauli<kernels::parallel::apply_pauli_string>)->Name("pauli/parallel")->DenseRange(14, 22, 4);

BENCHMARK_MAIN();
