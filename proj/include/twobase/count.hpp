#pragma once

#include "twobase/bigint.hpp"
#include "twobase/rational.hpp"
#include "twobase/subset.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace twobase {

enum class CountMethod { brute, dfs };

std::string to_string(CountMethod m);
CountMethod count_method_from_string(const std::string& s); // throws BadArgument

// Exact counting result for one n: |Gamma(n)| and the number of bases whose
// sumset already contains n+1 (the quantity driving the recurrence).
struct CountRecord {
    int n = 0;
    BigInt gamma;
    BigInt gamma_next_covered;
    CountMethod method = CountMethod::brute;
    double elapsed_s = 0.0; // informational only
};

struct CountOptions {
    int brute_ceiling = 24;
    int enum_ceiling = 20;
    int dfs_ceiling = 40;
    bool force = false; // lift the configurable ceilings (hard engine caps remain)
    int threads = 0;    // 0 = hardware concurrency
};

// Exhaustive oracle: iterates all 2^(n+1) subsets and tests coverage.
// Throws LimitExceeded above the ceiling (or above the n=30 engine cap).
CountRecord count_brute(int n, const CountOptions& opts = {});

// Scalable exact counter: DFS over membership decisions for 0,1,...,n in
// increasing order, maintaining the partial sumset and pruning dead targets.
// The search space can be split into up to 2^partition_depth independent
// subtrees; totals are identical for every partition depth and worker count.
// Throws Overflow for n > 62 (shard accumulators are 64-bit).
CountRecord count_dfs(int n, int partition_depth = 8, const CountOptions& opts = {});

// Streams every 2-base for n exactly once, in increasing order of the mask
// value (element i <-> bit i). Returns the number of bases delivered.
std::uint64_t enumerate_bases(int n, const std::function<void(const SubsetMask&)>& sink,
                              const CountOptions& opts = {});

// |Gamma(n+1)| == |Gamma(n)| + |{X in Gamma(n) : n+1 in X+X}|, checked exactly.
bool verify_recurrence(int n, const CountOptions& opts = {});

// gamma_next_covered / gamma in lowest terms.
BigRational delta_of(const CountRecord& rec);
BigRational delta(int n, const CountOptions& opts = {});

struct GrowthRow {
    int n = 0;
    BigInt gamma;
    BigInt gamma_next_covered;
    BigRational delta;       // in [0, 1]
    BigRational ratio;       // gamma / 2^(n+1), non-increasing in n
    double ratio_float = 0.0;
};

std::vector<GrowthRow> growth_table(int n_max, const CountOptions& opts = {});

} // namespace twobase
