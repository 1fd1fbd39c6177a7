#pragma once

#include "catqae/ingest/dataset.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace catqae::ingest {

struct ManifestFile {
    std::string filename;
    int year = 0;
    std::optional<std::uintmax_t> size;  // bytes of the .csv.gz, when pinned
};

/// Pinned snapshot of NOAA Storm Events detail files.
struct Manifest {
    std::string base_url;
    std::vector<ManifestFile> files;
    std::string retrieved_date;  // YYYY-MM-DD
};

inline constexpr std::string_view kNoaaBaseUrl =
    "https://www.ncei.noaa.gov/pub/data/swdi/stormevents/csvfiles/";
/// Years covered by the pinned analysis.
inline constexpr int kFirstYear = 2020;
inline constexpr int kLastYear = 2024;
inline constexpr std::string_view kManifestName = "noaa_manifest.json";
inline constexpr double kMinPropertyDamage = 1000.0;

/// Reads/writes {base_url, files[], retrieved_date}. Throws DataError on bad JSON.
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Row accounting of one load.
struct LoadReport {
    std::size_t rows = 0;
    std::size_t kept = 0;
    std::size_t empty = 0;            // blank damage field
    std::size_t below_threshold = 0;  // parsed, under $1,000 (includes 0.00K)
    std::size_t malformed = 0;        // unparseable damage field
    std::vector<std::string> warnings;
};

/// Loads every manifest file from `cache_dir` (downloading absent ones unless
/// `offline`), keeps property damage >= $1,000, concatenates in year order.
/// Throws DataError for an empty manifest, a missing file in offline mode, or
/// a file without a DAMAGE_PROPERTY column. Size mismatches only warn.
LossDataset load_noaa(const Manifest& manifest, const std::filesystem::path& cache_dir,
                      bool offline, LoadReport* report = nullptr);

/// Whole file, gunzipped when compressed. Throws DataError.
std::string read_gz_file(const std::filesystem::path& path);

/// RFC 4180 records: quoted fields may hold commas, doubled quotes and newlines.
void for_each_csv_record(std::string_view text,
                         const std::function<void(std::span<const std::string>)>& on_record);

// Network side (optional at runtime, never used by tests).

/// GET `url` into `dest`. Throws DataError on failure.
void download_file(const std::string& url, const std::filesystem::path& dest);

/// Detail-file names listed in an index page, latest revision per year within
/// [first_year, last_year], sorted by year.
std::vector<ManifestFile> select_detail_files(std::string_view index_html, int first_year,
                                              int last_year);

/// Fetches the remote index and builds a manifest dated `today`.
Manifest discover_manifest(const std::string& base_url, int first_year, int last_year,
                           const std::string& today);

} // namespace catqae::ingest
