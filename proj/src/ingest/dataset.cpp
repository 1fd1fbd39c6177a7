#include "catqae/ingest/dataset.hpp"

#include "catqae/core/errors.hpp"
#include "catqae/core/rng.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace catqae::ingest {

std::string_view to_string(DataSource source) {
    return source == DataSource::Noaa ? "noaa" : "synthetic_pareto";
}

LossDataset generate_pareto(std::size_t count, double alpha, double x_m, std::uint64_t seed) {
    if (!(alpha > 0.0) || !(x_m > 0.0)) throw DomainError("generate_pareto: alpha and x_m must be > 0");
    LossDataset d;
    d.source = DataSource::SyntheticPareto;
    d.losses.reserve(count);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) d.losses.push_back(x_m * std::pow(rng.uniform(), -1.0 / alpha));
    char buf[160];
    std::snprintf(buf, sizeof buf, "pareto(count=%zu, alpha=%g, x_m=%g, seed=%llu)", count, alpha, x_m,
                  static_cast<unsigned long long>(seed));
    d.provenance = buf;
    return d;
}

std::optional<double> parse_damage(std::string_view field) {
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
    if (field.empty()) return std::nullopt;

    double mult = 1.0;
    switch (std::toupper(static_cast<unsigned char>(field.back()))) {
    case 'K': mult = 1e3; break;
    case 'M': mult = 1e6; break;
    case 'B': mult = 1e9; break;
    default: break;
    }
    std::string_view digits = mult == 1.0 ? field : field.substr(0, field.size() - 1);
    // NOAA writes a bare "K" for zero in some years.
    if (digits.empty()) return 0.0;

    double value = 0.0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || end != digits.data() + digits.size() || !(value >= 0.0) ||
        !std::isfinite(value)) {
        throw DataError("unparseable damage field '" + std::string(field) + "'");
    }
    return std::round(value * mult * 100.0) / 100.0;
}

void export_losses(const LossDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    char buf[64];
    for (double x : dataset.losses) {
        std::snprintf(buf, sizeof buf, "%.2f\n", x);
        out << buf;
    }
}

} // namespace catqae::ingest
