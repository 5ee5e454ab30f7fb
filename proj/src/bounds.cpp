#include "twobase/bounds.hpp"

#include "twobase/errors.hpp"
#include "twobase/probability.hpp"

#include <cstdint>

namespace twobase {

namespace {

using u64 = std::uint64_t;

// t^2(n) <= 1/100  <=>  1600 * 3^n * (n+1)^40 <= 3 * 2^(2n)
// (both sides of (16/3)(3/4)^n (n+1)^40 <= 1/100 multiplied by 300 * 4^n).
bool le_tenth_with_pow3(int n, const BigInt& pow3_n) {
    BigInt lhs = BigInt(1600) * pow3_n * BigInt::pow(BigInt(n + 1), 40);
    BigInt rhs = BigInt(3) << (2 * static_cast<std::size_t>(n));
    return lhs <= rhs;
}

// t(n+1) <= (9/10) t(n)  <=>  t^2(n+1) <= (81/100) t^2(n)
//                        <=>  75 (n+2)^40 <= 81 (n+1)^40
bool decay_ok_at(long long n) {
    BigInt lhs = BigInt(75) * BigInt::pow(BigInt(n + 2), 40);
    BigInt rhs = BigInt(81) * BigInt::pow(BigInt(n + 1), 40);
    return lhs <= rhs;
}

} // namespace

BigRational t_squared(int n) {
    if (n < 0) raise(ErrorKind::BadArgument, "n must be non-negative");
    BigInt num = BigInt(16) * BigInt::pow(BigInt(3), static_cast<u64>(n)) *
                 BigInt::pow(BigInt(n + 1), 40);
    BigInt den = BigInt(3) << (2 * static_cast<std::size_t>(n));
    return BigRational(std::move(num), std::move(den));
}

BoundEval eval_bound(int n) {
    BoundEval out;
    out.n = n;
    out.t_squared = t_squared(n);
    out.le_tenth = le_tenth_with_pow3(n, BigInt::pow(BigInt(3), static_cast<u64>(n)));
    out.decay_ok = decay_ok_at(n);
    return out;
}

N0Result find_n0() {
    constexpr long long kScanCap = 1000000;

    N0Result out;
    long long first_decay = -1;
    for (long long n = 0; n < kScanCap; ++n) {
        if (decay_ok_at(n)) {
            first_decay = n;
            break;
        }
    }
    if (first_decay < 0) raise(ErrorKind::Internal, "decay threshold not found below scan cap");

    // From first_decay on the step ratio is <= 81/100 < 1, so t decreases
    // strictly and the first n with t <= 1/10 stays below 1/10 afterwards.
    BigInt pow3 = BigInt::pow(BigInt(3), static_cast<u64>(first_decay));
    for (long long n = first_decay; n < kScanCap; ++n) {
        if (le_tenth_with_pow3(static_cast<int>(n), pow3)) {
            out.n0 = n;
            out.first_decay_n = first_decay;
            return out;
        }
        pow3.mul_u64(3);
    }
    raise(ErrorKind::Internal, "t <= 1/10 not reached below scan cap");
}

bool t_ratio_strictly_decreasing(int n_lo, int n_hi) {
    for (long long n = n_lo; n <= n_hi; ++n) {
        BigInt lhs = BigInt::pow(BigInt(n + 2), 80);
        BigInt rhs = BigInt::pow(BigInt((n + 1)) * BigInt(n + 3), 40);
        if (!(lhs > rhs)) return false;
    }
    return true;
}

bool bound_window_holds(long long n_lo, long long span) {
    BigInt pow3 = BigInt::pow(BigInt(3), static_cast<u64>(n_lo));
    for (long long n = n_lo; n <= n_lo + span; ++n) {
        if (!le_tenth_with_pow3(static_cast<int>(n), pow3)) return false;
        if (!decay_ok_at(n)) return false;
        pow3.mul_u64(3);
    }
    return true;
}

bool verify_delta_bound(int n, const BigInt& gamma, const BigInt& gamma_next) {
    if (gamma_next > gamma) raise(ErrorKind::BadArgument, "gamma_next exceeds gamma");
    if (gamma.sign() <= 0) raise(ErrorKind::BadArgument, "gamma must be positive");

    // 1 - delta = (gamma - gamma_next) / gamma, in [0, 1]
    BigRational one_minus_delta(gamma - gamma_next, gamma);

    // right side is t(n); compare squares: (1-delta)^2 <= 4 (3/4)^(n-1) (n+1)^40
    BigRational rhs_sq = BigRational(4) *
                         BigRational::pow(BigRational::from_ratio(3, 4), n - 1) *
                         BigRational(BigInt::pow(BigInt(n + 1), 40));
    if (!(one_minus_delta * one_minus_delta <= rhs_sq)) return false;

    // intermediate step: |{X : n+1 not in X+X}| = 2^(n+1) P[n+1 not in X+X]
    // must dominate the count of bases missing n+1
    ExactProb p = exact_prob_not_generated(n, static_cast<long long>(n) + 1);
    // p.den divides 2^(n+1), so this is an exact integer
    BigInt missing_subsets =
        (BigInt::power_of_two(static_cast<u64>(n) + 1) * p.num) / p.den;
    return missing_subsets >= gamma - gamma_next;
}

ChainReport verify_product_chain(const std::vector<GrowthRow>& rows, int base_n) {
    ChainReport report;
    if (rows.empty() || base_n < rows.front().n || base_n > rows.back().n)
        raise(ErrorKind::BadArgument, "base_n outside the table");

    const std::size_t base_idx = static_cast<std::size_t>(base_n - rows.front().n);
    const BigInt& base_gamma = rows[base_idx].gamma;

    bool ok = true;
    BigRational product(1);
    for (std::size_t i = base_idx; i < rows.size(); ++i) {
        // gamma(n) == gamma(base) * product, with product reduced each step
        BigInt lhs = rows[i].gamma * product.den();
        BigInt rhs = base_gamma * product.num();
        if (lhs != rhs) ok = false;
        product *= BigRational(1) + rows[i].delta;
    }

    report.ok = ok;
    report.min_ratio = rows.front().ratio;
    for (const GrowthRow& row : rows) {
        if (row.ratio < report.min_ratio) report.min_ratio = row.ratio;
    }
    return report;
}

} // namespace twobase
