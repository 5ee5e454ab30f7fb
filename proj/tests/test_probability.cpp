#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twobase/errors.hpp"
#include "twobase/probability.hpp"
#include "twobase/subset.hpp"

#include <cmath>
#include <cstdint>

using twobase::BigInt;
using twobase::BigRational;
using twobase::SubsetMask;

namespace {

// oracle: exhaustive frequency of "k not generated" over all subsets of [n]_0
BigRational brute_prob_not_generated(int n, int k) {
    std::uint64_t misses = 0;
    const std::uint64_t total = 1ull << (n + 1);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::uint64_t sums = 0;
        std::uint64_t rest = mask;
        while (rest) {
            sums |= mask << __builtin_ctzll(rest);
            rest &= rest - 1;
        }
        if (!((sums >> k) & 1)) ++misses;
    }
    return BigRational(BigInt(misses), BigInt(total));
}

// oracle: exhaustive average of |uncovered(X)|
BigRational brute_expected_uncovered(int n) {
    std::uint64_t total_unc = 0;
    const std::uint64_t total = 1ull << (n + 1);
    const std::uint64_t tmask = total - 1;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::uint64_t sums = 0;
        std::uint64_t rest = mask;
        while (rest) {
            sums |= mask << __builtin_ctzll(rest);
            rest &= rest - 1;
        }
        total_unc += __builtin_popcountll(~sums & tmask);
    }
    return BigRational(BigInt(total_unc), BigInt(total));
}

} // namespace

TEST_CASE("exact miss probability, worked examples") {
    CHECK(twobase::exact_prob_not_generated(2, 2).value().str() == "3/8");
    CHECK(twobase::exact_prob_not_generated(10, 2).value().str() == "3/8");
    CHECK(twobase::exact_prob_not_generated(2, 3).value().str() == "3/4");
    CHECK(twobase::exact_prob_not_generated(7, 0).value().str() == "1/2");
    CHECK(twobase::exact_prob_not_generated(0, 0).value().str() == "1/2");
    CHECK(twobase::exact_prob_not_generated(4, 4).value().str() == "9/32");
    CHECK(twobase::exact_prob_not_generated(0, 1).value().str() == "1");
}

TEST_CASE("exact miss probability equals exhaustive frequency (n <= 12)") {
    for (int n = 0; n <= 12; ++n) {
        for (int k = 0; k <= n + 1; ++k) {
            CHECK(twobase::exact_prob_not_generated(n, k).value() == brute_prob_not_generated(n, k));
        }
    }
}

TEST_CASE("miss probability denominators are powers of two") {
    for (int n : {0, 3, 9, 40}) {
        for (int k = 0; k <= n + 1; ++k) {
            auto p = twobase::exact_prob_not_generated(n, k);
            CHECK(p.den.bit_length() >= 1);
            CHECK((p.den >> p.den.trailing_zero_bits()) == BigInt(1));
            CHECK(p.value() >= BigRational(0));
            CHECK(p.value() <= BigRational(1));
        }
    }
}

TEST_CASE("out of range k") {
    CHECK_THROWS_AS(twobase::exact_prob_not_generated(4, -1), twobase::Error);
    CHECK_THROWS_AS(twobase::exact_prob_not_generated(4, 6), twobase::Error);
}

TEST_CASE("the (3/4)^(k/2-1) bound holds for every k, certified exactly") {
    for (int n : {0, 1, 2, 5, 50, 200}) {
        auto rows = twobase::check_lemma_notgen(n);
        REQUIRE(rows.size() == static_cast<std::size_t>(n) + 2);
        for (const auto& row : rows) CHECK(row.ok);
    }
    // spot values: k=0 bound is 4/3 > 1 >= exact; k=2 bound is 1
    auto rows = twobase::check_lemma_notgen(4);
    CHECK(rows[0].bound_float == doctest::Approx(4.0 / 3.0));
    CHECK(rows[2].bound_float == doctest::Approx(1.0));
}

TEST_CASE("expected uncovered, worked examples") {
    CHECK(twobase::exact_expected_uncovered(0).str() == "1/2");
    CHECK(twobase::exact_expected_uncovered(2).str() == "13/8");
    double e200 = twobase::exact_expected_uncovered(200).to_double();
    CHECK(e200 > 4.99);
    CHECK(e200 < 5.01);
}

TEST_CASE("expected uncovered equals brute-force average (n <= 12)") {
    for (int n = 0; n <= 12; ++n) {
        CHECK(twobase::exact_expected_uncovered(n) == brute_expected_uncovered(n));
    }
}

TEST_CASE("expected uncovered stays below 10 and below the geometric limit") {
    CHECK(twobase::expected_uncovered_scan(2000, BigRational(10)) == -1);
    for (int n : {0, 1, 7, 100, 750}) {
        CHECK(twobase::expected_uncovered_below_geometric_limit(n));
    }
    // the scan reports the first violation when the limit is squeezed
    CHECK(twobase::expected_uncovered_scan(50, BigRational::from_ratio(1, 2)) == 1);
}

TEST_CASE("monte carlo uncovered mean approaches the exact value") {
    auto stats = twobase::mc_uncovered(2, 200000, 7);
    CHECK(stats.samples == 200000);
    double exact = 13.0 / 8.0;
    CHECK(std::abs(stats.mean() - exact) <= 4.0 * stats.stderr_of_mean());

    CHECK(stats.mean() >= 0.0);
    CHECK(stats.mean() <= 3.0); // n+1
    for (auto count : stats.per_k_misses) CHECK(count <= stats.samples);

    // per-k miss frequencies track the exact per-k probabilities
    for (int k = 0; k <= 2; ++k) {
        double rate = static_cast<double>(stats.per_k_misses[k]) / 200000.0;
        double want = twobase::exact_prob_not_generated(2, k).to_double();
        double sigma = std::sqrt(want * (1 - want) / 200000.0);
        CHECK(std::abs(rate - want) <= 5.0 * sigma);
    }
}

TEST_CASE("monte carlo totals are identical for any worker count") {
    auto one = twobase::mc_uncovered(33, 20000, 99, 1);
    auto eight = twobase::mc_uncovered(33, 20000, 99, 8);
    CHECK(one.sum == eight.sum);
    CHECK(one.sum_sq == eight.sum_sq);
    CHECK(one.per_k_misses == eight.per_k_misses);
}

TEST_CASE("monte carlo argument validation") {
    CHECK_THROWS_AS(twobase::mc_uncovered(2, 0, 1), twobase::Error);
}

TEST_CASE("single-target miss rate, including k = n+1") {
    // exact value for n=2, k=3 is 3/4 ({1,2} must both be present)
    auto r = twobase::mc_notgen(2, 3, 100000, 5);
    CHECK(std::abs(r.miss_rate() - 0.75) <= 4.0 * r.stderr_rate());
    // k <= n agrees with the per-k channel of mc_uncovered for the same seed
    auto stats = twobase::mc_uncovered(5, 20000, 77, 1);
    auto single = twobase::mc_notgen(5, 2, 20000, 77, 4);
    CHECK(single.misses == stats.per_k_misses[2]);
    CHECK_THROWS_AS(twobase::mc_notgen(2, 4, 10, 1), twobase::Error);
}

TEST_CASE("gamma prime counts") {
    // for n+1 <= threshold every subset qualifies
    CHECK(twobase::gamma_prime_count(10, 20) == BigInt::power_of_two(11));
    // n=20: only the 2^10 subsets of {11..20} leave all 21 targets uncovered
    CHECK(twobase::gamma_prime_count(20, 20) ==
          BigInt::power_of_two(21) - BigInt::power_of_two(10));
    for (int n = 0; n <= 16; ++n) {
        CHECK(twobase::gamma_prime_count(n, 20) >= BigInt::power_of_two(n));
    }
    twobase::CountOptions tight;
    tight.brute_ceiling = 4;
    CHECK_THROWS_AS(twobase::gamma_prime_count(10, 20, tight), twobase::Error);
}

TEST_CASE("gamma prime MC estimate is sane") {
    auto est = twobase::gamma_prime_mc(100, 20, 20000, 11);
    // expected uncovered is < 5 with light tails; nearly every subset is within 20
    CHECK(est.fraction > 0.9);
    CHECK(est.samples == 20000);
    auto est1 = twobase::gamma_prime_mc(100, 20, 20000, 11, 1);
    CHECK(est1.hits == est.hits);
}

TEST_CASE("completion preimages, worked examples") {
    // n=2, B={0,1}: preimages are {0,1} itself and {1} (misses {0,1}, adds both)
    auto pre = twobase::completion_preimages(SubsetMask::from_elements(2, {0, 1}));
    REQUIRE(pre.size() == 2);
    CHECK(pre[0].str() == "{1}");
    CHECK(pre[1].str() == "{0,1}");

    // {0} has two preimages ({} completes to {0}), which exceeds
    // (0+1)^20 = 1: the per-base cap (n+1)^20 genuinely holds only for n >= 1,
    // where sum_{j<=20} C(n+1, j) <= (n+1)^20 applies
    auto pre0 = twobase::completion_preimages(SubsetMask::from_elements(0, {0}));
    REQUIRE(pre0.size() == 2);
    CHECK(pre0[0].str() == "{}");
    CHECK(pre0[1].str() == "{0}");

    CHECK_THROWS_AS(twobase::completion_preimages(SubsetMask::from_elements(2, {0})),
                    twobase::Error);
}

TEST_CASE("preimage properties over every base at small n") {
    for (int n = 1; n <= 8; ++n) {
        BigInt prime_total = twobase::gamma_prime_count(n, 20);
        BigInt seen(0);
        twobase::enumerate_bases(n, [&](const SubsetMask& base) {
            auto pre = twobase::completion_preimages(base);
            // the base is always its own preimage
            bool self = false;
            for (const auto& x : pre) {
                CHECK(twobase::complete(x) == base);
                CHECK(x.subset_of(base));
                if (x == base) self = true;
            }
            CHECK(self);
            seen += BigInt(pre.size());
            // far below (n+1)^20, but assert the exact inequality anyway
            CHECK(BigInt(pre.size()) <= BigInt::pow(BigInt(n + 1), 20));
        });
        // completion partitions the threshold family by its image
        CHECK(seen == prime_total);
    }
}
