#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catqae::ingest {

enum class DataSource { SyntheticPareto, Noaa };

std::string_view to_string(DataSource source);

struct LossDataset {
    std::vector<double> losses;  // dollars
    DataSource source = DataSource::SyntheticPareto;
    std::string provenance;      // generator parameters or manifest reference

    std::size_t record_count() const noexcept { return losses.size(); }
};

/// Pareto type I draws x_m * U^(-1/alpha). Deterministic in `seed`.
LossDataset generate_pareto(std::size_t count, double alpha, double x_m, std::uint64_t seed);

/// NOAA damage field: "" -> nullopt; "10.00K" -> 10000; suffixes K/M/B scale
/// by 1e3/1e6/1e9, bare numbers are dollars; rounded to cents.
/// Throws DataError on anything else.
std::optional<double> parse_damage(std::string_view field);

/// One value per line, two decimals.
void export_losses(const LossDataset& dataset, const std::filesystem::path& path);

} // namespace catqae::ingest
