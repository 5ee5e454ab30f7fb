#pragma once

#include "twobase/bigint.hpp"
#include "twobase/count.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace twobase {

// One JSON line per record:
// {"schema_version":1,"n":4,"gamma":"6","gamma_next_covered":"4",
//  "method":"brute","elapsed_s":0.002}
struct CacheRecord {
    int schema_version = 1;
    int n = 0;
    BigInt gamma;
    BigInt gamma_next_covered;
    std::string method;
    double elapsed_s = 0.0;
};

CacheRecord to_cache_record(const CountRecord& rec);

// Appends one line under an exclusive file lock, so concurrent writers
// interleave whole lines.
void cache_append(const std::filesystem::path& path, const CacheRecord& rec);

// Newest record per n wins. Throws ParseError on malformed lines and when
// adjacent records contradict the recurrence
// gamma(n+1) = gamma(n) + gamma_next_covered(n).
std::map<int, CacheRecord> cache_load(const std::filesystem::path& path);

} // namespace twobase
