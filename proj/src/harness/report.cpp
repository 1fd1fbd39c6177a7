#include "catqae/harness/report.hpp"

#include "catqae/core/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace catqae::harness {

namespace fs = std::filesystem;

std::size_t ExperimentReport::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("no column '" + name + "' in " + experiment_id);
    return static_cast<std::size_t>(it - columns.begin());
}

double ExperimentReport::number(std::size_t row, const std::string& col) const {
    const Cell& c = rows.at(row).at(column(col));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw std::out_of_range("column '" + col + "' is not numeric");
}

std::string ExperimentReport::text(std::size_t row, const std::string& col) const {
    return format_cell(rows.at(row).at(column(col)));
}

const SlopeFit* ExperimentReport::slope(const std::string& estimator) const {
    for (const auto& s : slope_fits) {
        if (s.estimator == estimator) return &s;
    }
    return nullptr;
}

void ExperimentReport::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width does not match columns");
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    const double d = std::get<double>(cell);
    if (std::isnan(d)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", d);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(report.columns[i]);
    }
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(format_cell(row[i]));
        out << '\n';
    }
    return out.str();
}

std::string summary_json(const ExperimentReport& report) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["experiment"] = report.experiment_id;
    j["dataset"] = report.dataset;
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : report.meta) meta[k] = v;
    j["meta"] = meta;
    ordered_json fits = ordered_json::array();
    for (const auto& s : report.slope_fits) {
        fits.push_back(ordered_json{{"estimator", s.estimator},
                                    {"slope", s.slope},
                                    {"intercept", s.intercept},
                                    {"ci_low", s.ci_low},
                                    {"ci_high", s.ci_high},
                                    {"r_squared", s.r_squared},
                                    {"points", s.points},
                                    {"warnings", s.warnings}});
    }
    j["slope_fits"] = fits;
    j["notes"] = report.notes;
    return j.dump(2) + "\n";
}

fs::path write_report(const ExperimentReport& report, const fs::path& out_dir) {
    const fs::path dir = out_dir / report.experiment_id;
    fs::create_directories(dir / "plots");
    auto write = [](const fs::path& p, const std::string& body) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw DataError("cannot write " + p.string());
        out << body;
    };
    write(dir / "report.csv", to_csv(report));
    write(dir / "summary.json", summary_json(report));
    for (const auto& [plot, series] : report.plots) {
        for (const auto& [name, points] : series) {
            std::ostringstream body;
            body << "# " << plot << ": " << name << '\n';
            for (const auto& [x, y] : points) body << format_cell(x) << ' ' << format_cell(y) << '\n';
            write(dir / "plots" / (plot + "__" + name + ".dat"), body.str());
        }
    }
    return dir;
}

} // namespace catqae::harness
