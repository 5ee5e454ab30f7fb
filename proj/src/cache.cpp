#include "twobase/cache.hpp"

#include "twobase/errors.hpp"

#include <nlohmann/json.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <string>

namespace twobase {

using ordered_json = nlohmann::ordered_json;

CacheRecord to_cache_record(const CountRecord& rec) {
    CacheRecord out;
    out.n = rec.n;
    out.gamma = rec.gamma;
    out.gamma_next_covered = rec.gamma_next_covered;
    out.method = to_string(rec.method);
    out.elapsed_s = rec.elapsed_s;
    return out;
}

void cache_append(const std::filesystem::path& path, const CacheRecord& rec) {
    ordered_json j;
    j["schema_version"] = rec.schema_version;
    j["n"] = rec.n;
    j["gamma"] = rec.gamma.str();
    j["gamma_next_covered"] = rec.gamma_next_covered.str();
    j["method"] = rec.method;
    j["elapsed_s"] = rec.elapsed_s;
    std::string line = j.dump();
    line.push_back('\n');

    int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) raise(ErrorKind::Internal, "cannot open cache file " + path.string());
    ::flock(fd, LOCK_EX);
    ssize_t written = ::write(fd, line.data(), line.size());
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (written != static_cast<ssize_t>(line.size()))
        raise(ErrorKind::Internal, "short write to cache file " + path.string());
}

std::map<int, CacheRecord> cache_load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Internal, "cannot read cache file " + path.string());

    std::map<int, CacheRecord> out;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            raise(ErrorKind::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": not a JSON object");
        try {
            CacheRecord rec;
            rec.schema_version = j.at("schema_version").get<int>();
            rec.n = j.at("n").get<int>();
            rec.gamma = BigInt::from_string(j.at("gamma").get<std::string>());
            rec.gamma_next_covered =
                BigInt::from_string(j.at("gamma_next_covered").get<std::string>());
            rec.method = j.at("method").get<std::string>();
            rec.elapsed_s = j.at("elapsed_s").get<double>();
            out[rec.n] = std::move(rec); // later lines win
        } catch (const ordered_json::exception& e) {
            raise(ErrorKind::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }

    for (const auto& [n, rec] : out) {
        auto next = out.find(n + 1);
        if (next == out.end()) continue;
        if (rec.gamma + rec.gamma_next_covered != next->second.gamma)
            raise(ErrorKind::ParseError,
                  path.string() + ": records for n=" + std::to_string(n) + " and n=" +
                      std::to_string(n + 1) + " contradict the recurrence");
    }
    return out;
}

} // namespace twobase
