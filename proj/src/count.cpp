#include "twobase/count.hpp"

#include "twobase/errors.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace twobase {

namespace {

using u64 = std::uint64_t;

constexpr int kBruteEngineCap = 30; // 2^(n+1) masks, single-word sumsets
constexpr int kDfsEngineCap = 62;   // 64-bit shard accumulators, single-word sums

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Single-word sumset of `mask` (needs 2n+1 <= 63, i.e. n <= 31).
inline u64 word_sumset(u64 mask) {
    u64 sums = 0;
    u64 rest = mask;
    while (rest) {
        sums |= mask << __builtin_ctzll(rest);
        rest &= rest - 1;
    }
    return sums;
}

struct Totals {
    u64 bases = 0;
    u64 next_covered = 0;
};

// ---- DFS engine ------------------------------------------------------------
//
// Membership of elements 0..n is decided in increasing order. With the
// in-set X decided below `depth`, a target k < depth can only ever be
// covered by pairs that are already decided: any pair {i, k-i} with an
// undecided component has k-i >= depth, forcing i = k-(k-i) < k-depth+1 <= 0
// unless i is in X; and the smallest usable in-element is min(X) = 0
// (branches without 0 die at once, since 0 = 0+0 is its only
// representation). So a branch is dead exactly when some target below the
// frontier is missing from the partial sumset, which reduces the dead-target
// test to one bit probe per decision.
class DfsEngine {
public:
    explicit DfsEngine(int n)
        : n_(n),
          target_mask_(n == 63 ? ~u64(0) : ((u64(1) << (n + 1)) - 1)),
          next_bit_(n + 1) {}

    // All targets covered at `depth`: the 2^(n+1-depth) completions below
    // this node are all bases. Splits them by whether n+1 lands in X+X,
    // counting the misses with one factor per representation pair of n+1
    // (the pairs are disjoint, so the choices are independent).
    void closed_tail(int depth, u64 in_mask, u64 sums, Totals& t) const {
        const int free = n_ + 1 - depth;
        const u64 leaves = u64(1) << free;
        t.bases += leaves;
        if ((sums >> next_bit_) & 1) {
            t.next_covered += leaves;
            return;
        }
        int forced = 0, open_pairs = 0, midpoint = 0;
        for (int i = 1; i <= (n_ + 1) / 2; ++i) {
            const int j = n_ + 1 - i;
            if (i == j) {
                if (i >= depth) midpoint = 1;
            } else if (j < depth) {
                // both decided and not both in (bit n+1 is clear): dead pair
            } else if (i < depth) {
                if ((in_mask >> i) & 1) ++forced; // j must stay out to miss n+1
            } else {
                ++open_pairs;
            }
        }
        u64 miss = 1;
        for (int p = 0; p < open_pairs; ++p) miss *= 3;
        miss <<= free - forced - 2 * open_pairs - midpoint;
        t.next_covered += leaves - miss;
    }

    void run(int depth, u64 in_mask, u64 sums, Totals& t) const {
        while (true) {
            if ((sums & target_mask_) == target_mask_) {
                closed_tail(depth, in_mask, sums, t);
                return;
            }
            // depth <= n here: an all-covered state is caught above, and the
            // pruning invariant covers every target below the frontier.
            const u64 in2 = in_mask | (u64(1) << depth);
            const u64 sums2 = sums | (in2 << depth);
            if ((sums >> depth) & 1) {
                run(depth + 1, in2, sums2, t); // in-branch
                // out-branch: target `depth` already covered, keep going
                ++depth;
            } else {
                // out-branch would leave target `depth` dead; only `in` survives
                in_mask = in2;
                sums = sums2;
                ++depth;
            }
        }
    }

    int n() const { return n_; }

private:
    int n_;
    u64 target_mask_;
    int next_bit_;
};

struct DfsTask {
    u64 in_mask;
    u64 sums;
};

// Fixes the first `depth` membership decisions, pruning dead prefixes.
void gather_prefixes(const DfsEngine& eng, int n, int depth, int at, u64 in_mask, u64 sums,
                     std::vector<DfsTask>& out) {
    if (at == depth) {
        out.push_back({in_mask, sums});
        return;
    }
    const u64 in2 = in_mask | (u64(1) << at);
    gather_prefixes(eng, n, depth, at + 1, in2, sums | (in2 << at), out);
    if ((sums >> at) & 1) gather_prefixes(eng, n, depth, at + 1, in_mask, sums, out);
}

Totals run_sharded(const DfsEngine& eng, int partition_depth, int threads) {
    const int n = eng.n();
    if (partition_depth < 0) partition_depth = 0;
    if (partition_depth > n + 1) partition_depth = n + 1;

    std::vector<DfsTask> tasks;
    gather_prefixes(eng, n, partition_depth, 0, 0, 0, tasks);

    std::vector<Totals> results(tasks.size());
    const int workers = std::min<int>(std::max(threads, 1), std::max<std::size_t>(tasks.size(), 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            eng.run(partition_depth, tasks[i].in_mask, tasks[i].sums, results[i]);
    } else {
        std::atomic<std::size_t> cursor{0};
        auto work = [&] {
            while (true) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= tasks.size()) break;
                eng.run(partition_depth, tasks[i].in_mask, tasks[i].sums, results[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    Totals sum;
    for (const Totals& r : results) {
        sum.bases += r.bases;
        sum.next_covered += r.next_covered;
    }
    return sum;
}

// Counts masks in [lo, hi) that are 2-bases (and those also covering n+1).
Totals brute_range(int n, u64 lo, u64 hi) {
    const u64 tmask = (u64(1) << (n + 1)) - 1;
    Totals t;
    for (u64 mask = lo; mask < hi; ++mask) {
        const u64 sums = word_sumset(mask);
        if ((sums & tmask) == tmask) {
            ++t.bases;
            t.next_covered += (sums >> (n + 1)) & 1;
        }
    }
    return t;
}

} // namespace

std::string to_string(CountMethod m) {
    return m == CountMethod::brute ? "brute" : "dfs";
}

CountMethod count_method_from_string(const std::string& s) {
    if (s == "brute") return CountMethod::brute;
    if (s == "dfs") return CountMethod::dfs;
    raise(ErrorKind::BadArgument, "unknown counting method: " + s);
}

CountRecord count_brute(int n, const CountOptions& opts) {
    if (n < 0) raise(ErrorKind::BadArgument, "n must be non-negative");
    if (n > opts.brute_ceiling && !opts.force)
        raise(ErrorKind::LimitExceeded,
              "count_brute: n=" + std::to_string(n) + " above ceiling " +
                  std::to_string(opts.brute_ceiling) + " (use force to override)");
    if (n > kBruteEngineCap)
        raise(ErrorKind::LimitExceeded,
              "count_brute: engine iterates 2^(n+1) masks and is capped at n=" +
                  std::to_string(kBruteEngineCap));

    const auto t0 = std::chrono::steady_clock::now();
    const u64 total = u64(1) << (n + 1);
    const int workers = resolve_threads(opts.threads);
    Totals sum;
    if (workers <= 1 || total < 1024) {
        sum = brute_range(n, 0, total);
    } else {
        const u64 chunk = (total + workers - 1) / workers;
        std::vector<Totals> parts(workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            const u64 lo = std::min<u64>(w * chunk, total);
            const u64 hi = std::min<u64>(lo + chunk, total);
            pool.emplace_back([&parts, w, n, lo, hi] { parts[w] = brute_range(n, lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (const Totals& p : parts) {
            sum.bases += p.bases;
            sum.next_covered += p.next_covered;
        }
    }

    CountRecord rec;
    rec.n = n;
    rec.gamma = BigInt(sum.bases);
    rec.gamma_next_covered = BigInt(sum.next_covered);
    rec.method = CountMethod::brute;
    rec.elapsed_s = seconds_since(t0);
    return rec;
}

CountRecord count_dfs(int n, int partition_depth, const CountOptions& opts) {
    if (n < 0) raise(ErrorKind::BadArgument, "n must be non-negative");
    if (n > opts.dfs_ceiling && !opts.force)
        raise(ErrorKind::LimitExceeded,
              "count_dfs: n=" + std::to_string(n) + " above ceiling " +
                  std::to_string(opts.dfs_ceiling) + " (use force to override)");
    if (n > kDfsEngineCap)
        raise(ErrorKind::Overflow,
              "count_dfs: 64-bit shard accumulators support n <= " +
                  std::to_string(kDfsEngineCap));

    const auto t0 = std::chrono::steady_clock::now();
    DfsEngine eng(n);
    Totals sum = run_sharded(eng, partition_depth, resolve_threads(opts.threads));

    CountRecord rec;
    rec.n = n;
    rec.gamma = BigInt(sum.bases);
    rec.gamma_next_covered = BigInt(sum.next_covered);
    rec.method = CountMethod::dfs;
    rec.elapsed_s = seconds_since(t0);
    return rec;
}

std::uint64_t enumerate_bases(int n, const std::function<void(const SubsetMask&)>& sink,
                              const CountOptions& opts) {
    if (n < 0) raise(ErrorKind::BadArgument, "n must be non-negative");
    if (n > opts.enum_ceiling && !opts.force)
        raise(ErrorKind::LimitExceeded,
              "enumerate: n=" + std::to_string(n) + " above ceiling " +
                  std::to_string(opts.enum_ceiling) + " (use force to override)");
    if (n > kBruteEngineCap)
        raise(ErrorKind::LimitExceeded, "enumerate: capped at n=" + std::to_string(kBruteEngineCap));

    const u64 tmask = (u64(1) << (n + 1)) - 1;
    u64 count = 0;
    for (u64 mask = 0; mask <= tmask; ++mask) {
        if ((word_sumset(mask) & tmask) == tmask) {
            ++count;
            sink(SubsetMask::from_word(n, mask));
        }
    }
    return count;
}

bool verify_recurrence(int n, const CountOptions& opts) {
    CountRecord here = count_dfs(n, 8, opts);
    CountRecord next = count_dfs(n + 1, 8, opts);
    return next.gamma == here.gamma + here.gamma_next_covered;
}

BigRational delta_of(const CountRecord& rec) {
    return BigRational(rec.gamma_next_covered, rec.gamma);
}

BigRational delta(int n, const CountOptions& opts) {
    return delta_of(count_dfs(n, 8, opts));
}

std::vector<GrowthRow> growth_table(int n_max, const CountOptions& opts) {
    if (n_max < 0) raise(ErrorKind::BadArgument, "n_max must be non-negative");
    std::vector<GrowthRow> rows;
    rows.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        CountRecord rec = count_dfs(n, 8, opts);
        GrowthRow row;
        row.n = n;
        row.gamma = rec.gamma;
        row.gamma_next_covered = rec.gamma_next_covered;
        row.delta = delta_of(rec);
        row.ratio = BigRational(rec.gamma, BigInt::power_of_two(n + 1));
        row.ratio_float = row.ratio.to_double();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace twobase
