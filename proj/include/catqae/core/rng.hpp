#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace catqae {

/// SplitMix64 finaliser. Used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// 64-bit FNV-1a over the bytes of a tag.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Stream seed for one (experiment, estimator, configuration, repetition) cell.
///
/// seed = splitmix64(... splitmix64(splitmix64(master ^ fnv(experiment)) ^ fnv(estimator))
///        ^ config_index) ^ rep_index)
///
/// Independent of scheduling, so repetitions can run in any order or thread.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view experiment,
                                    std::string_view estimator, std::uint64_t config_index,
                                    std::uint64_t rep_index) noexcept {
    std::uint64_t h = splitmix64(master ^ fnv1a64(experiment));
    h = splitmix64(h ^ fnv1a64(estimator));
    h = splitmix64(h ^ config_index);
    return splitmix64(h ^ rep_index);
}

/// Seedable 64-bit generator (MT19937-64) with portable uniform draws.
///
/// The standard distributions are implementation-defined, so uniforms are built
/// directly from the raw 64-bit output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on (lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Lemire-style rejection keeps the draw unbiased.
        const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace catqae
