#include "fetch.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef DENSDEG_WITH_HTTP
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#endif

#include "densdeg/batch.hpp"

namespace densdeg::fetch {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// flock on <cache>/.lock for the lifetime of the object
class CacheLock {
public:
    CacheLock(const std::string& dir, bool exclusive) {
        fs::create_directories(dir);
        fd_ = ::open((dir + "/.lock").c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0) throw FetchError("cannot open cache lock in " + dir);
        if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
            ::close(fd_);
            throw FetchError("cannot lock cache " + dir);
        }
    }
    ~CacheLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    CacheLock(const CacheLock&) = delete;
    CacheLock& operator=(const CacheLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

std::string resolve_cache_dir(const std::string& requested) {
    if (!requested.empty()) return requested;
    if (const char* env = std::getenv("DENSDEG_CACHE"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/densdeg";
    return ".densdeg-cache";
}

std::string cache_path(const std::string& cache_dir, const std::string& label) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(label));
    std::string h(buf);
    return cache_dir + "/" + h.substr(0, 2) + "/" + h + ".json";
}

std::optional<json> cache_read(const std::string& cache_dir, const std::string& label) {
    std::string path = cache_path(cache_dir, label);
    if (!fs::exists(cache_dir)) return std::nullopt;
    CacheLock lock(cache_dir, false);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("label") || j.at("label") != label) return std::nullopt;
    return j;
}

void cache_write(const std::string& cache_dir, const std::string& label, const json& curve) {
    CacheLock lock(cache_dir, true);
    std::string path = cache_path(cache_dir, label);
    fs::create_directories(fs::path(path).parent_path());
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << curve.dump(2) << "\n";
        if (!out) throw FetchError("cannot write " + tmp);
    }
    fs::rename(tmp, path);
}

bool is_genus2_label(const std::string& label) { return std::count(label.begin(), label.end(), '.') == 3; }

json normalize_record(const std::string& label, const json& record) {
    json out = {{"label", label}};
    if (is_genus2_label(label)) {
        json eqn = record.at("eqn");
        if (eqn.is_string()) eqn = json::parse(eqn.get<std::string>());
        out["model"] = {{"f", eqn.at(0)}, {"h", eqn.at(1)}};
        out["facts"] = json::object();
    } else {
        json a = record.at("ainvs");
        if (a.is_string()) a = json::parse(a.get<std::string>());
        out["model"] = {{"ainvs", a}};
        out["facts"] = json::object();
        if (record.contains("rank") && record.at("rank").is_number_integer())
            out["facts"]["positive_rank"] = {{"value", record.at("rank").get<int>() > 0 ? "yes" : "no"},
                                             {"anchor", "rank recorded in the LMFDB"}};
    }
    return out;
}

namespace {

std::optional<json> fetch_online(const std::string& label, std::string& err) {
#ifdef DENSDEG_WITH_HTTP
    httplib::Client cli("https://www.lmfdb.org");
    cli.set_connection_timeout(10);
    cli.set_read_timeout(20);
    std::string path = is_genus2_label(label) ? "/api/g2c_curves/?_format=json&label=" + label
                                              : "/api/ec_curvedata/?_format=json&lmfdb_label=" + label;
    auto res = cli.Get(path);
    if (!res) {
        err = "network error: " + httplib::to_string(res.error());
        return std::nullopt;
    }
    if (res->status != 200) {
        err = "HTTP " + std::to_string(res->status);
        return std::nullopt;
    }
    json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.contains("data") || body["data"].empty()) {
        err = "unknown label '" + label + "'";
        return std::nullopt;
    }
    return normalize_record(label, body["data"][0]);
#else
    (void)label;
    err = "built without HTTP support";
    return std::nullopt;
#endif
}

}  // namespace

json fetch_curve(const std::string& label, const FetchOptions& opt, std::string& source) {
    std::string dir = resolve_cache_dir(opt.cache_dir);
    if (auto hit = cache_read(dir, label)) {
        source = "cache";
        return *hit;
    }
    std::string err;
    if (opt.online) {
        if (auto got = fetch_online(label, err)) {
            cache_write(dir, label, *got);
            source = "network";
            return *got;
        }
    }
    if (!opt.fixture_file.empty() && fs::exists(opt.fixture_file)) {
        json fx = load_json_file(opt.fixture_file);
        if (fx.contains("curves") && fx["curves"].contains(label)) {
            json c = fx["curves"][label];
            c["label"] = label;
            source = "fixture";
            return c;
        }
    }
    if (opt.online) throw FetchError("fetch failed for " + label + ": " + err);
    throw FetchError("offline: '" + label + "' is not cached; pass --online to query the LMFDB");
}

}  // namespace densdeg::fetch
