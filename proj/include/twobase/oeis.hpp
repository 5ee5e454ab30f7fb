#pragma once

#include "twobase/bigint.hpp"
#include "twobase/count.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace twobase {

// OEIS b-file: "index value" per line, '#' comments and blank lines ignored.
struct OeisBFile {
    std::vector<std::pair<long long, BigInt>> entries; // strictly increasing indices
    bool offset_warning = false;                       // first index was not 0
};

// Throws ParseError (with line number) on malformed lines, non-increasing
// indices, or values < 1. A first index != 0 only sets offset_warning; the
// index is trusted as n either way.
OeisBFile parse_bfile(const std::filesystem::path& path);

enum class OeisOutcome { match, mismatch, skipped };

struct OeisCheckRow {
    long long index = 0;
    OeisOutcome outcome = OeisOutcome::skipped;
    BigInt expected; // from the b-file
    BigInt local;    // only set when counted
    std::string note;
};

struct OeisCheckReport {
    std::vector<OeisCheckRow> rows;
    long long matched = 0;
    long long mismatched = 0;
    long long skipped = 0;
    bool ok = false; // no mismatches (skips are fine)
};

// Counts gamma(n) locally (dfs engine) for every entry with index <= max_n,
// skipping the rest. A positive budget_s stops counting (and skips onward)
// once the cumulative counting time exceeds it.
OeisCheckReport oeis_check(const OeisBFile& bfile, int max_n, double budget_s,
                           const CountOptions& opts = {});

} // namespace twobase
