#include "twobase/probability.hpp"

#include "twobase/errors.hpp"
#include "twobase/rng.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace twobase {

namespace {

using u64 = std::uint64_t;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

inline u64 word_sumset(u64 mask) {
    u64 sums = 0;
    u64 rest = mask;
    while (rest) {
        sums |= mask << __builtin_ctzll(rest);
        rest &= rest - 1;
    }
    return sums;
}

// representation-pair count p and midpoint flag m for P[k not in X+X]
void pair_profile(int n, long long k, long long& pairs, int& midpoint) {
    const long long lo = std::max<long long>(0, k - n);
    const long long hi = (k + 1) / 2 - 1; // last i with i < k-i
    pairs = std::max<long long>(0, hi - lo + 1);
    midpoint = (k % 2 == 0 && k / 2 <= n) ? 1 : 0;
}

struct McPartial {
    u64 sum = 0;
    u64 sum_sq = 0;
    std::vector<u64> per_k;
};

// uncovered-target counter over raw words, reusing scratch buffers
struct UncoveredCounter {
    int n;
    std::size_t words;
    std::vector<u64> x;
    std::vector<u64> sums;
    u64 tail_mask;

    explicit UncoveredCounter(int n_)
        : n(n_), words(static_cast<std::size_t>(n_) / 64 + 1), x(words), sums(words) {
        int rem = (n + 1) % 64;
        tail_mask = rem ? (u64(1) << rem) - 1 : ~u64(0);
    }

    // fills x from the sample index, returns uncovered count; misses may be null
    int count(u64 seed, u64 index, std::vector<u64>* misses) {
        random_words(seed, index, x);
        x.back() &= tail_mask;
        std::fill(sums.begin(), sums.end(), 0);
        for (std::size_t w = 0; w < words; ++w) {
            u64 word = x[w];
            while (word) {
                const int e = static_cast<int>(64 * w) + __builtin_ctzll(word);
                word &= word - 1;
                // sums |= x << e, truncated to the target range [0, n]
                const std::size_t ws = static_cast<std::size_t>(e) / 64;
                const int bs = e % 64;
                if (bs == 0) {
                    for (std::size_t i = 0; i + ws < words; ++i) sums[i + ws] |= x[i];
                } else {
                    for (std::size_t i = 0; i + ws < words; ++i) {
                        sums[i + ws] |= x[i] << bs;
                        if (i + ws + 1 < words) sums[i + ws + 1] |= x[i] >> (64 - bs);
                    }
                }
            }
        }
        int unc = 0;
        for (std::size_t w = 0; w < words; ++w) {
            u64 missing = ~sums[w];
            if (w + 1 == words) missing &= tail_mask;
            unc += __builtin_popcountll(missing);
            if (misses) {
                while (missing) {
                    (*misses)[64 * w + __builtin_ctzll(missing)] += 1;
                    missing &= missing - 1;
                }
            }
        }
        return unc;
    }
};

} // namespace

ExactProb exact_prob_not_generated(int n, long long k) {
    if (n < 0) raise(ErrorKind::BadArgument, "n must be non-negative");
    if (k < 0 || k > static_cast<long long>(n) + 1)
        raise(ErrorKind::OutOfRange,
              "k=" + std::to_string(k) + " outside [0, n+1] for n=" + std::to_string(n));
    long long pairs;
    int midpoint;
    pair_profile(n, k, pairs, midpoint);
    ExactProb p;
    p.num = BigInt::pow(BigInt(3), static_cast<u64>(pairs));
    p.den = BigInt::power_of_two(static_cast<u64>(2 * pairs + midpoint));
    return p;
}

std::vector<NotGenCheck> check_lemma_notgen(int n) {
    std::vector<NotGenCheck> out;
    out.reserve(static_cast<std::size_t>(n) + 2);
    const BigRational three_quarters = BigRational::from_ratio(3, 4);
    for (long long k = 0; k <= static_cast<long long>(n) + 1; ++k) {
        NotGenCheck row;
        row.k = k;
        row.exact = exact_prob_not_generated(n, k);
        // exact <= (3/4)^(k/2-1)  <=>  exact^2 <= (3/4)^(k-2), both sides positive
        BigRational exact = row.exact.value();
        BigRational lhs_sq = exact * exact;
        BigRational rhs_sq = BigRational::pow(three_quarters, k - 2);
        row.ok = lhs_sq <= rhs_sq;
        row.bound_float = std::pow(0.75, static_cast<double>(k) / 2.0 - 1.0);
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

// Horner accumulation of S(n) = sum_{k=0..n} 3^ceil(k/2) * 2^(n-k); then
// E(n) = S(n) / 2^(n+1). Valid because every representation pair of a
// target k <= n lies inside [n]_0, so the per-k probability is 3^ceil(k/2)
// divided by 2^(k+1) independently of n.
class ExpectedScan {
public:
    ExpectedScan() : acc_(1), pow3_(1) {}

    // advance to the next n (first call moves to n=0 -> S=1 handled in ctor)
    void step(int k) {
        if (k == 0) return; // ctor state is n=0
        if (k % 2 == 1) pow3_.mul_u64(3);
        acc_ <<= 1;
        acc_ += pow3_;
    }

    const BigInt& numerator() const { return acc_; }

private:
    BigInt acc_;
    BigInt pow3_;
};

} // namespace

BigRational exact_expected_uncovered(int n) {
    if (n < 0) raise(ErrorKind::BadArgument, "n must be non-negative");
    ExpectedScan scan;
    for (int k = 0; k <= n; ++k) scan.step(k);
    return BigRational(scan.numerator(), BigInt::power_of_two(static_cast<u64>(n) + 1));
}

long long expected_uncovered_scan(int n_max, const BigRational& limit) {
    ExpectedScan scan;
    for (int n = 0; n <= n_max; ++n) {
        scan.step(n);
        // S / 2^(n+1) <= p/q  <=>  q*S <= p << (n+1)
        BigInt lhs = scan.numerator() * limit.den();
        BigInt rhs = limit.num() << (static_cast<std::size_t>(n) + 1);
        if (lhs > rhs) return n;
    }
    return -1;
}

bool expected_uncovered_below_geometric_limit(int n) {
    // E <= (4/3) / (1 - sqrt(3/4)) = 8 / (6 - 3*sqrt(3)); with E = S/D this
    // is 6S - 8D <= 3*sqrt(3)*S, settled by squaring when the left side is
    // positive.
    ExpectedScan scan;
    for (int k = 0; k <= n; ++k) scan.step(k);
    const BigInt& s = scan.numerator();
    BigInt d = BigInt::power_of_two(static_cast<u64>(n) + 1);
    BigInt lhs = s * BigInt(6) - d * BigInt(8);
    if (lhs.sign() <= 0) return true;
    return lhs * lhs <= s * s * BigInt(27);
}

double McStats::mean() const {
    return samples ? sum.to_double() / static_cast<double>(samples) : 0.0;
}

double McStats::stderr_of_mean() const {
    if (samples < 2) return 0.0;
    const double n = static_cast<double>(samples);
    const double m = mean();
    double var = (sum_sq.to_double() - n * m * m) / (n - 1.0);
    if (var < 0) var = 0;
    return std::sqrt(var / n);
}

McStats mc_uncovered(int n, u64 samples, u64 seed, int threads) {
    if (n < 0) raise(ErrorKind::BadArgument, "n must be non-negative");
    if (samples == 0) raise(ErrorKind::BadArgument, "samples must be >= 1");

    const int workers = static_cast<int>(
        std::min<u64>(static_cast<u64>(resolve_threads(threads)), samples));
    std::vector<McPartial> parts(workers);
    const u64 chunk = (samples + workers - 1) / workers;

    auto work = [&](int w) {
        McPartial& part = parts[w];
        part.per_k.assign(static_cast<std::size_t>(n) + 1, 0);
        UncoveredCounter counter(n);
        const u64 lo = std::min<u64>(static_cast<u64>(w) * chunk, samples);
        const u64 hi = std::min<u64>(lo + chunk, samples);
        for (u64 i = lo; i < hi; ++i) {
            const u64 unc = static_cast<u64>(counter.count(seed, i, &part.per_k));
            part.sum += unc;
            part.sum_sq += unc * unc;
        }
    };

    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    McStats out;
    out.n = n;
    out.samples = samples;
    out.seed = seed;
    out.per_k_misses.assign(static_cast<std::size_t>(n) + 1, 0);
    u64 total = 0, total_sq = 0;
    for (const McPartial& part : parts) {
        total += part.sum;
        total_sq += part.sum_sq;
        for (std::size_t k = 0; k < part.per_k.size(); ++k) out.per_k_misses[k] += part.per_k[k];
    }
    out.sum = BigInt(total);
    out.sum_sq = BigInt(total_sq);
    return out;
}

double McMissResult::stderr_rate() const {
    if (samples < 2) return 0.0;
    const double f = miss_rate();
    return std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
}

McMissResult mc_notgen(int n, long long k, u64 samples, u64 seed, int threads) {
    if (n < 0) raise(ErrorKind::BadArgument, "n must be non-negative");
    if (samples == 0) raise(ErrorKind::BadArgument, "samples must be >= 1");
    if (k < 0 || k > static_cast<long long>(n) + 1)
        raise(ErrorKind::OutOfRange,
              "k=" + std::to_string(k) + " outside [0, n+1] for n=" + std::to_string(n));

    const std::size_t xwords = static_cast<std::size_t>(n) / 64 + 1;
    // sums must reach bit n+1, one past the subset range
    const std::size_t swords = static_cast<std::size_t>(n + 1) / 64 + 1;
    const int rem = (n + 1) % 64;
    const u64 tail_mask = rem ? (u64(1) << rem) - 1 : ~u64(0);

    const int workers = static_cast<int>(
        std::min<u64>(static_cast<u64>(resolve_threads(threads)), samples));
    std::vector<u64> parts(workers, 0);
    const u64 chunk = (samples + workers - 1) / workers;
    auto work = [&](int w) {
        std::vector<u64> x(xwords), sums(swords);
        const u64 lo = std::min<u64>(static_cast<u64>(w) * chunk, samples);
        const u64 hi = std::min<u64>(lo + chunk, samples);
        u64 misses = 0;
        for (u64 i = lo; i < hi; ++i) {
            random_words(seed, i, x);
            x.back() &= tail_mask;
            std::fill(sums.begin(), sums.end(), 0);
            for (std::size_t w2 = 0; w2 < xwords; ++w2) {
                u64 word = x[w2];
                while (word) {
                    const int e = static_cast<int>(64 * w2) + __builtin_ctzll(word);
                    word &= word - 1;
                    const std::size_t ws = static_cast<std::size_t>(e) / 64;
                    const int bs = e % 64;
                    if (bs == 0) {
                        for (std::size_t j = 0; j + ws < swords && j < xwords; ++j)
                            sums[j + ws] |= x[j];
                    } else {
                        for (std::size_t j = 0; j + ws < swords && j < xwords; ++j) {
                            sums[j + ws] |= x[j] << bs;
                            if (j + ws + 1 < swords) sums[j + ws + 1] |= x[j] >> (64 - bs);
                        }
                    }
                }
            }
            if (!((sums[static_cast<std::size_t>(k) / 64] >> (k % 64)) & 1)) ++misses;
        }
        parts[w] = misses;
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    McMissResult out;
    out.n = n;
    out.k = k;
    out.samples = samples;
    out.seed = seed;
    for (u64 p : parts) out.misses += p;
    return out;
}

BigInt gamma_prime_count(int n, int threshold, const CountOptions& opts) {
    if (n < 0 || threshold < 0) raise(ErrorKind::BadArgument, "n and threshold must be non-negative");
    if (n > opts.brute_ceiling && !opts.force)
        raise(ErrorKind::LimitExceeded,
              "gamma_prime_count: n=" + std::to_string(n) + " above ceiling " +
                  std::to_string(opts.brute_ceiling) + " (use force, or the MC estimate)");
    if (n > 30)
        raise(ErrorKind::LimitExceeded, "gamma_prime_count: exhaustive mode capped at n=30");

    const u64 total = u64(1) << (n + 1);
    const u64 tmask = total - 1;
    const int workers = resolve_threads(opts.threads);
    std::vector<u64> parts(std::max(workers, 1), 0);
    const u64 chunk = (total + workers - 1) / workers;
    auto work = [&](int w) {
        const u64 lo = std::min<u64>(static_cast<u64>(w) * chunk, total);
        const u64 hi = std::min<u64>(lo + chunk, total);
        u64 count = 0;
        for (u64 mask = lo; mask < hi; ++mask) {
            const u64 missing = ~word_sumset(mask) & tmask;
            if (__builtin_popcountll(missing) <= threshold) ++count;
        }
        parts[w] = count;
    };
    if (workers <= 1 || total < 1024) {
        u64 count = 0;
        for (u64 mask = 0; mask < total; ++mask) {
            const u64 missing = ~word_sumset(mask) & tmask;
            if (__builtin_popcountll(missing) <= threshold) ++count;
        }
        return BigInt(count);
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
    u64 count = 0;
    for (u64 p : parts) count += p;
    return BigInt(count);
}

GammaPrimeEstimate gamma_prime_mc(int n, int threshold, u64 samples, u64 seed, int threads) {
    if (samples == 0) raise(ErrorKind::BadArgument, "samples must be >= 1");
    const int workers = static_cast<int>(
        std::min<u64>(static_cast<u64>(resolve_threads(threads)), samples));
    std::vector<u64> parts(workers, 0);
    const u64 chunk = (samples + workers - 1) / workers;
    auto work = [&](int w) {
        UncoveredCounter counter(n);
        const u64 lo = std::min<u64>(static_cast<u64>(w) * chunk, samples);
        const u64 hi = std::min<u64>(lo + chunk, samples);
        u64 hits = 0;
        for (u64 i = lo; i < hi; ++i)
            if (counter.count(seed, i, nullptr) <= threshold) ++hits;
        parts[w] = hits;
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    GammaPrimeEstimate est;
    est.n = n;
    est.threshold = threshold;
    est.samples = samples;
    for (u64 p : parts) est.hits += p;
    est.fraction = static_cast<double>(est.hits) / static_cast<double>(samples);
    est.stderr_fraction = std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(samples));
    return est;
}

std::vector<SubsetMask> completion_preimages(const SubsetMask& base, int threshold) {
    const int n = base.n();
    if (n > 30) raise(ErrorKind::LimitExceeded, "completion_preimages: capped at n=30");
    if (!is_two_base(base)) raise(ErrorKind::NotABase, "completion_preimages: input is not a 2-base");

    const u64 bmask = base.word0();
    const u64 tmask = (u64(1) << (n + 1)) - 1;
    std::vector<u64> found;
    u64 sub = bmask;
    while (true) {
        const u64 missing = ~word_sumset(sub) & tmask;
        if (__builtin_popcountll(missing) <= threshold && (sub | missing) == bmask)
            found.push_back(sub);
        if (sub == 0) break;
        sub = (sub - 1) & bmask;
    }
    std::sort(found.begin(), found.end());
    std::vector<SubsetMask> out;
    out.reserve(found.size());
    for (u64 m : found) out.push_back(SubsetMask::from_word(n, m));
    return out;
}

} // namespace twobase
