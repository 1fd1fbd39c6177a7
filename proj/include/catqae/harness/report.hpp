#pragma once

#include "catqae/harness/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace catqae::harness {

using Cell = std::variant<std::string, double, std::int64_t>;

/// Tabular result of one experiment plus slope fits and plot series.
struct ExperimentReport {
    std::string experiment_id;
    std::string dataset;
    std::vector<std::pair<std::string, std::string>> meta;  // echoed configuration
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<SlopeFit> slope_fits;
    std::vector<std::string> notes;
    // plot name -> series name -> (x, y) points
    std::map<std::string, std::map<std::string, std::vector<std::pair<double, double>>>> plots;

    std::size_t column(const std::string& name) const;  // throws std::out_of_range
    double number(std::size_t row, const std::string& col) const;
    std::string text(std::size_t row, const std::string& col) const;
    const SlopeFit* slope(const std::string& estimator) const;
    void add_row(std::vector<Cell> row);
};

/// Numbers print with up to 10 significant digits; integers exactly.
std::string format_cell(const Cell& cell);
std::string to_csv(const ExperimentReport& report);
/// JSON: experiment, dataset, meta, slope_fits, notes.
std::string summary_json(const ExperimentReport& report);

/// Writes DIR/<id>/report.csv, DIR/<id>/summary.json and
/// DIR/<id>/plots/<plot>__<series>.dat (two columns: x y).
std::filesystem::path write_report(const ExperimentReport& report, const std::filesystem::path& out_dir);

} // namespace catqae::harness
