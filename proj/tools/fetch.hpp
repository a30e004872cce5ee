#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace densdeg::fetch {

struct FetchOptions {
    bool online = false;
    std::string cache_dir;     // empty: $DENSDEG_CACHE, then ~/.cache/densdeg
    std::string fixture_file;  // ship-time fallback
};

class FetchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string resolve_cache_dir(const std::string& requested);
// <cache>/<2 hex>/<16 hex>.json, keyed by the label's FNV-1a hash.
std::string cache_path(const std::string& cache_dir, const std::string& label);
std::optional<nlohmann::json> cache_read(const std::string& cache_dir, const std::string& label);
void cache_write(const std::string& cache_dir, const std::string& label, const nlohmann::json& curve);

// Elliptic labels look like 65.a1, genus-2 labels like 249.a.6723.1.
bool is_genus2_label(const std::string& label);
// LMFDB API record to the curve schema.
nlohmann::json normalize_record(const std::string& label, const nlohmann::json& record);

// Cache, then network (only when online), then fixtures.
nlohmann::json fetch_curve(const std::string& label, const FetchOptions& opt, std::string& source);

}  // namespace densdeg::fetch
