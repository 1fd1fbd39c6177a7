#include "catqae/qsim/sampling.hpp"

#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace catqae::qsim {

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (const auto& [_, c] : counts) t += c;
    return t;
}

std::uint64_t Histogram::count(std::uint64_t outcome) const {
    const auto it = counts.find(outcome);
    return it == counts.end() ? 0 : it->second;
}

double Histogram::frequency(std::uint64_t outcome) const {
    const auto t = total();
    return t == 0 ? 0.0 : static_cast<double>(count(outcome)) / static_cast<double>(t);
}

double Histogram::frequency_of_one(std::size_t bit) const {
    const auto t = total();
    if (t == 0) return 0.0;
    std::uint64_t ones = 0;
    for (const auto& [outcome, c] : counts) {
        if ((outcome >> bit) & 1U) ones += c;
    }
    return static_cast<double>(ones) / static_cast<double>(t);
}

std::map<std::string, std::uint64_t> Histogram::bitstrings() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto& [outcome, c] : counts) out[to_bitstring(outcome, width)] = c;
    return out;
}

std::string to_bitstring(std::uint64_t outcome, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t j = 0; j < width; ++j) {
        if ((outcome >> j) & 1U) s[width - 1 - j] = '1';
    }
    return s;
}

std::vector<double> marginal_distribution(const Statevector& state,
                                          std::span<const Qubit> measured_qubits) {
    if (measured_qubits.empty()) throw std::invalid_argument("measured qubit list is empty");
    for (std::size_t j = 0; j < measured_qubits.size(); ++j) {
        if (measured_qubits[j] >= state.num_qubits()) {
            throw std::invalid_argument("measured qubit out of range");
        }
        for (std::size_t i = 0; i < j; ++i) {
            if (measured_qubits[i] == measured_qubits[j]) {
                throw std::invalid_argument("measured qubit listed twice");
            }
        }
    }
    std::vector<double> dist(std::size_t{1} << measured_qubits.size(), 0.0);
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::uint64_t outcome = 0;
        for (std::size_t j = 0; j < measured_qubits.size(); ++j) {
            outcome |= ((i >> measured_qubits[j]) & 1U) << j;
        }
        dist[outcome] += std::norm(amps[i]);
    }
    return dist;
}

OutcomeSampler::OutcomeSampler(std::vector<double> distribution)
    : cumulative_(std::move(distribution)) {
    if (cumulative_.empty()) throw std::invalid_argument("empty outcome distribution");
    double acc = 0.0;
    for (auto& p : cumulative_) {
        if (!(p >= 0.0)) throw DomainError("negative outcome probability");
        acc += p;
        p = acc;
    }
    if (!(acc > 0.0)) throw DomainError("outcome distribution has zero mass");
}

std::uint64_t OutcomeSampler::locate(double u) const {
    const double x = u * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) {
        // u*total rounded onto the last boundary; fall back to the last outcome with mass.
        it = std::lower_bound(cumulative_.begin(), cumulative_.end(), cumulative_.back());
    }
    return static_cast<std::uint64_t>(it - cumulative_.begin());
}

Histogram sample_shots(const Statevector& state, std::span<const Qubit> measured_qubits,
                       std::uint64_t shots, std::uint64_t rng_seed) {
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");
    const OutcomeSampler sampler(marginal_distribution(state, measured_qubits));
    Rng rng(rng_seed);
    Histogram h;
    h.width = measured_qubits.size();
    for (std::uint64_t s = 0; s < shots; ++s) ++h.counts[sampler.draw(rng)];
    return h;
}

} // namespace catqae::qsim
