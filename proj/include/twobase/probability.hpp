#pragma once

#include "twobase/bigint.hpp"
#include "twobase/count.hpp"
#include "twobase/rational.hpp"
#include "twobase/subset.hpp"

#include <cstdint>
#include <vector>

namespace twobase {

// Exact probability over uniformly random X, always 3^p / 2^q.
struct ExactProb {
    BigInt num;
    BigInt den; // a power of two
    BigRational value() const { return BigRational(num, den); }
    double to_double() const { return value().to_double(); }
};

// P[k not in X+X] for uniformly random X subset of [n]_0, 0 <= k <= n+1.
// Equals (3/4)^p * (1/2)^m where p counts the unordered representation pairs
// {i, k-i} with i < k-i inside [n]_0 and m = 1 iff k is even with k/2 in
// [n]_0; the events "pair not fully present" are independent across the
// disjoint pairs. Throws OutOfRange for k outside [0, n+1].
ExactProb exact_prob_not_generated(int n, long long k);

struct NotGenCheck {
    long long k = 0;
    ExactProb exact;
    double bound_float = 0.0; // (3/4)^(k/2 - 1), display only
    bool ok = false;          // exact <= bound, certified in exact arithmetic
};

// Compares the exact probability against (3/4)^(k/2 - 1) for every
// k in [n+1]_0. Irrational bounds (odd k) are compared on squares.
std::vector<NotGenCheck> check_lemma_notgen(int n);

// Sum over k in [n]_0 of P[k not in X+X], exactly. Monotone in n, < 5.
BigRational exact_expected_uncovered(int n);

// One-pass scan proving exact_expected_uncovered(n) <= limit for every
// n <= n_max; returns the first failing n, or -1 if none fail.
long long expected_uncovered_scan(int n_max, const BigRational& limit);

// Exact check of E(n) <= (4/3) / (1 - sqrt(3/4)), done on squared forms.
bool expected_uncovered_below_geometric_limit(int n);

// Monte Carlo accumulator for |[n]_0 \ (X+X)|. Merging partial results is
// associative, so totals do not depend on how the index range was split.
struct McStats {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    BigInt sum;    // sum of uncovered counts
    BigInt sum_sq; // sum of squared uncovered counts
    std::vector<std::uint64_t> per_k_misses; // index k: count of samples with k uncovered

    double mean() const;
    double stderr_of_mean() const;
};

// Samples via the counter-based generator; identical output for every
// worker count. Throws BadArgument on samples == 0.
McStats mc_uncovered(int n, std::uint64_t samples, std::uint64_t seed, int threads = 0);

// Empirical frequency of "k not in X+X" for one target k in [0, n+1].
struct McMissResult {
    int n = 0;
    long long k = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t misses = 0;
    double miss_rate() const {
        return samples ? static_cast<double>(misses) / static_cast<double>(samples) : 0.0;
    }
    double stderr_rate() const;
};
McMissResult mc_notgen(int n, long long k, std::uint64_t samples, std::uint64_t seed,
                       int threads = 0);

// |{X : |uncovered(X)| <= threshold}| by exhaustive iteration (n <= brute
// ceiling). The count is >= 2^n for threshold 20.
BigInt gamma_prime_count(int n, int threshold = 20, const CountOptions& opts = {});

// Monte Carlo estimate of the same count for large n: fraction of sampled
// subsets within the threshold, scaled by 2^(n+1).
struct GammaPrimeEstimate {
    int n = 0;
    int threshold = 0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double fraction = 0.0;
    double stderr_fraction = 0.0;
};
GammaPrimeEstimate gamma_prime_mc(int n, int threshold, std::uint64_t samples,
                                  std::uint64_t seed, int threads = 0);

// All X with complete(X) = B and at most `threshold` uncovered targets,
// in increasing mask order. Throws NotABase if B is not a 2-base.
std::vector<SubsetMask> completion_preimages(const SubsetMask& base, int threshold = 20);

} // namespace twobase
