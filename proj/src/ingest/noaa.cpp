#include "catqae/ingest/noaa.hpp"

#include "catqae/core/errors.hpp"

#include <json.hpp>
#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>

namespace catqae::ingest {

namespace fs = std::filesystem;
using nlohmann::json;

Manifest read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest " + path.string());
    try {
        const json j = json::parse(in);
        Manifest m;
        m.base_url = j.at("base_url").get<std::string>();
        m.retrieved_date = j.at("retrieved_date").get<std::string>();
        for (const auto& f : j.at("files")) {
            ManifestFile mf;
            mf.filename = f.at("filename").get<std::string>();
            mf.year = f.at("year").get<int>();
            if (f.contains("size")) mf.size = f.at("size").get<std::uintmax_t>();
            m.files.push_back(std::move(mf));
        }
        return m;
    } catch (const json::exception& e) {
        throw DataError("malformed manifest " + path.string() + ": " + e.what());
    }
}

void write_manifest(const Manifest& manifest, const fs::path& path) {
    json files = json::array();
    for (const auto& f : manifest.files) {
        json entry{{"filename", f.filename}, {"year", f.year}};
        if (f.size) entry["size"] = *f.size;
        files.push_back(std::move(entry));
    }
    const json j{{"base_url", manifest.base_url}, {"files", files}, {"retrieved_date", manifest.retrieved_date}};
    std::ofstream out(path);
    if (!out) throw DataError("cannot write manifest " + path.string());
    out << j.dump(2) << '\n';
}

std::string read_gz_file(const fs::path& path) {
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz) throw DataError("cannot open " + path.string());
    std::string out;
    char buf[1 << 16];
    int n = 0;
    while ((n = gzread(gz, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
    int err = Z_OK;
    const char* msg = gzerror(gz, &err);
    const std::string detail = msg ? msg : "";
    gzclose(gz);
    if (n < 0 || (err != Z_OK && err != Z_STREAM_END)) {
        throw DataError("corrupt gzip stream in " + path.string() + ": " + detail);
    }
    return out;
}

void for_each_csv_record(std::string_view text,
                         const std::function<void(std::span<const std::string>)>& on_record) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool any = false;  // current record has content
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"': quoted = true; any = true; break;
        case ',': fields.push_back(std::move(field)); field.clear(); any = true; break;
        case '\r': break;
        case '\n':
            if (any || !field.empty()) {
                fields.push_back(std::move(field));
                on_record(fields);
            }
            fields.clear();
            field.clear();
            any = false;
            break;
        default: field.push_back(c); any = true;
        }
    }
    if (any || !field.empty()) {
        fields.push_back(std::move(field));
        on_record(fields);
    }
}

namespace {

void parse_detail_file(const std::string& text, const std::string& name, std::vector<double>& out,
                       LoadReport& report) {
    std::ptrdiff_t damage_col = -1;
    bool header = true;
    std::size_t warned = 0;
    for_each_csv_record(text, [&](std::span<const std::string> rec) {
        if (header) {
            header = false;
            const auto it = std::find(rec.begin(), rec.end(), "DAMAGE_PROPERTY");
            if (it == rec.end()) throw DataError(name + ": no DAMAGE_PROPERTY column");
            damage_col = it - rec.begin();
            return;
        }
        ++report.rows;
        if (static_cast<std::ptrdiff_t>(rec.size()) <= damage_col) {
            ++report.malformed;
            return;
        }
        try {
            const auto value = parse_damage(rec[static_cast<std::size_t>(damage_col)]);
            if (!value) {
                ++report.empty;
            } else if (*value < kMinPropertyDamage) {
                ++report.below_threshold;
            } else {
                out.push_back(*value);
                ++report.kept;
            }
        } catch (const DataError& e) {
            ++report.malformed;
            if (warned++ < 5) report.warnings.push_back(name + ": " + e.what() + " (skipped)");
        }
    });
    if (header) throw DataError(name + ": empty file");
}

} // namespace

LossDataset load_noaa(const Manifest& manifest, const fs::path& cache_dir, bool offline,
                      LoadReport* report) {
    if (manifest.files.empty()) throw DataError("manifest lists no files");
    LoadReport local;
    LoadReport& rep = report ? *report : local;

    std::vector<ManifestFile> files = manifest.files;
    std::stable_sort(files.begin(), files.end(),
                     [](const ManifestFile& a, const ManifestFile& b) { return a.year < b.year; });

    LossDataset d;
    d.source = DataSource::Noaa;
    for (const auto& f : files) {
        const fs::path path = cache_dir / f.filename;
        if (!fs::exists(path)) {
            if (offline) throw DataError("offline mode: missing cached file " + path.string());
            fs::create_directories(cache_dir);
            download_file(manifest.base_url + f.filename, path);
        }
        if (f.size && fs::file_size(path) != *f.size) {
            rep.warnings.push_back(f.filename + ": size " + std::to_string(fs::file_size(path)) +
                                   " differs from manifest " + std::to_string(*f.size));
        }
        parse_detail_file(read_gz_file(path), f.filename, d.losses, rep);
    }
    d.provenance = "noaa manifest " + manifest.base_url + " retrieved " + manifest.retrieved_date +
                   " (" + std::to_string(files.size()) + " files)";
    return d;
}

std::vector<ManifestFile> select_detail_files(std::string_view index_html, int first_year,
                                              int last_year) {
    static const std::regex pattern(R"(StormEvents_details-ftp_v1\.0_d(\d{4})_c(\d{8})\.csv\.gz)");
    std::map<int, std::pair<std::string, std::string>> latest;  // year -> (revision, name)
    const std::string html(index_html);
    for (auto it = std::sregex_iterator(html.begin(), html.end(), pattern); it != std::sregex_iterator(); ++it) {
        const int year = std::stoi((*it)[1].str());
        if (year < first_year || year > last_year) continue;
        const std::string revision = (*it)[2].str();
        auto& slot = latest[year];
        if (revision > slot.first) slot = {revision, (*it)[0].str()};
    }
    std::vector<ManifestFile> out;
    for (const auto& [year, entry] : latest) out.push_back({entry.second, year, std::nullopt});
    return out;
}

} // namespace catqae::ingest
