#pragma once

#include "twobase/bigint.hpp"
#include "twobase/count.hpp"
#include "twobase/rational.hpp"

#include <vector>

namespace twobase {

// t(n) = (4/sqrt(3)) * (sqrt(3)/2)^n * (n+1)^20 involves sqrt(3), so all
// certified comparisons work on t(n)^2 = (16/3) * (3/4)^n * (n+1)^40 and
// other squared, denominator-cleared forms.
struct BoundEval {
    int n = 0;
    BigRational t_squared;
    bool le_tenth = false; // t(n) <= 1/10
    bool decay_ok = false; // t(n+1) <= (9/10) t(n)
};

BigRational t_squared(int n);
BoundEval eval_bound(int n);

// Exact scan results: first_decay_n is the first n whose squared step ratio
// t^2(n+1)/t^2(n) = (3/4)(1 + 1/(n+1))^40 is <= 81/100; n0 is the first
// n >= first_decay_n with t(n) <= 1/10. The step ratio decreases strictly
// in n with limit 3/4, so both thresholds, once reached, hold onwards.
struct N0Result {
    long long n0 = 0;
    long long first_decay_n = 0;
};
N0Result find_n0();

// (n+2)^80 > ((n+1)(n+3))^40 for every n in [n_lo, n_hi]: the squared step
// ratio is strictly decreasing.
bool t_ratio_strictly_decreasing(int n_lo, int n_hi);

// le_tenth and decay_ok for every n in [n_lo, n_lo + span], certified with
// an incrementally maintained power of three.
bool bound_window_holds(long long n_lo, long long span);

// 1 - delta(n) <= 2 * (3/4)^((n-1)/2) * (n+1)^20 (the right side is exactly
// t(n)), checked on squares; also cross-checks that the number of subsets
// missing n+1, which is 2^(n+1) * P[n+1 not in X+X], dominates
// gamma - gamma_next. Throws BadArgument if gamma_next > gamma.
bool verify_delta_bound(int n, const BigInt& gamma, const BigInt& gamma_next);

// |Gamma(n)| = |Gamma(base_n)| * prod_{k=base_n}^{n-1} (1 + delta(k)),
// checked exactly for every n in the table from base_n on. min_ratio is the
// smallest (= last) value of gamma / 2^(n+1) in the table.
struct ChainReport {
    bool ok = false;
    BigRational min_ratio;
};
ChainReport verify_product_chain(const std::vector<GrowthRow>& rows, int base_n);

} // namespace twobase
