// Network code lives apart so httplib and OpenSSL stay out of the other units.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "catqae/core/errors.hpp"
#include "catqae/ingest/noaa.hpp"

#include <fstream>
#include <regex>

namespace catqae::ingest {

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, re)) throw DataError("not an http(s) url: " + url);
    return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

std::string fetch(const std::string& url) {
    const SplitUrl u = split_url(url);
    httplib::Client client(u.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(300);
    const auto res = client.Get(u.path);
    if (!res) throw DataError("GET " + url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw DataError("GET " + url + " returned HTTP " + std::to_string(res->status));
    return res->body;
}

} // namespace

void download_file(const std::string& url, const std::filesystem::path& dest) {
    const std::string body = fetch(url);
    const auto tmp = std::filesystem::path(dest).concat(".part");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot write " + tmp.string());
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
    }
    std::filesystem::rename(tmp, dest);
}

Manifest discover_manifest(const std::string& base_url, int first_year, int last_year,
                           const std::string& today) {
    Manifest m;
    m.base_url = base_url;
    m.retrieved_date = today;
    m.files = select_detail_files(fetch(base_url), first_year, last_year);
    if (m.files.empty()) throw DataError("no detail files found at " + base_url);
    return m;
}

} // namespace catqae::ingest
