#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twobase/rng.hpp"
#include "twobase/subset.hpp"

#include <cstdint>
#include <set>
#include <vector>

using twobase::SubsetMask;
using twobase::SumsetMask;

namespace {

// independent oracle: double loop over all pairs
std::set<int> sumset_pairs(const SubsetMask& x) {
    std::set<int> out;
    auto elems = x.elements();
    for (int a : elems)
        for (int b : elems) out.insert(a + b);
    return out;
}

bool sumsets_agree(const SubsetMask& x) {
    SumsetMask s = twobase::sumset(x);
    std::set<int> ref = sumset_pairs(x);
    for (int v = 0; v <= 2 * x.n(); ++v) {
        if (s.contains(v) != (ref.count(v) > 0)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("sumset worked examples") {
    SubsetMask x = SubsetMask::from_elements(6, {0, 1, 3});
    SumsetMask s = twobase::sumset(x);
    std::vector<int> expect = {0, 1, 2, 3, 4, 6};
    for (int v = 0; v <= 12; ++v) {
        bool want = std::find(expect.begin(), expect.end(), v) != expect.end();
        CHECK(s.contains(v) == want);
    }

    CHECK(twobase::sumset(SubsetMask(5)).contains(0) == false); // empty set
    SumsetMask single = twobase::sumset(SubsetMask::from_elements(4, {2}));
    CHECK(single.contains(4));
    CHECK(!single.contains(2));
    CHECK(!single.contains(0));
}

TEST_CASE("is_two_base worked examples") {
    CHECK(twobase::is_two_base(SubsetMask::from_elements(6, {0, 1, 2, 3})));
    CHECK(!twobase::is_two_base(SubsetMask::from_elements(6, {0, 1, 3}))); // 5 missing
    CHECK(!twobase::is_two_base(SubsetMask(0)));                           // empty, 0 uncovered
}

TEST_CASE("uncovered worked examples") {
    CHECK(twobase::uncovered(SubsetMask::from_elements(6, {0, 1, 3})) ==
          SubsetMask::from_elements(6, {5}));
    for (int n : {0, 1, 5, 17}) {
        SubsetMask full(n);
        for (int i = 0; i <= n; ++i) full.set(i);
        CHECK(twobase::uncovered(full).empty());
    }
    CHECK(twobase::uncovered(SubsetMask(2)) == SubsetMask::from_elements(2, {0, 1, 2}));
}

TEST_CASE("complete worked examples") {
    SubsetMask x = SubsetMask::from_elements(6, {0, 1, 3});
    SubsetMask done = twobase::complete(x);
    CHECK(done == SubsetMask::from_elements(6, {0, 1, 3, 5}));
    CHECK(twobase::is_two_base(done));

    SubsetMask base = SubsetMask::from_elements(6, {0, 1, 2, 3});
    CHECK(twobase::complete(base) == base);

    CHECK(twobase::complete(SubsetMask(2)) == SubsetMask::from_elements(2, {0, 1, 2}));
}

TEST_CASE("shift-or sumset equals pair loop, exhaustively to n=16") {
    for (int n = 0; n <= 16; ++n) {
        for (std::uint64_t mask = 0; mask < (1ull << (n + 1)); ++mask) {
            SubsetMask x = SubsetMask::from_word(n, mask);
            REQUIRE(sumsets_agree(x));
        }
    }
}

TEST_CASE("shift-or sumset equals pair loop on random large universes") {
    for (int iter = 0; iter < 60; ++iter) {
        int n = 65 + static_cast<int>(twobase::mc_sample_subset(9, 5, iter).word0() % 448);
        SubsetMask x = twobase::mc_sample_subset(n, 1234 + iter, iter);
        CHECK(sumsets_agree(x));
    }
}

TEST_CASE("complete always yields a 2-base (random property)") {
    for (int iter = 0; iter < 400; ++iter) {
        int n = static_cast<int>(twobase::mc_sample_subset(5, 77, iter).word0() % 64) + 1;
        SubsetMask x = twobase::mc_sample_subset(n, 99 + iter, iter);
        SubsetMask done = twobase::complete(x);
        CHECK(twobase::is_two_base(done));
        CHECK(x.subset_of(done));
    }
}

TEST_CASE("sumset monotone under subset inclusion") {
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(iter % 60);
        SubsetMask y = twobase::mc_sample_subset(n, 1000 + iter, iter);
        // drop ~half the elements of y to get x
        SubsetMask drop = twobase::mc_sample_subset(n, 2000 + iter, iter);
        SubsetMask x(n);
        for (int e : y.elements())
            if (!drop.contains(e)) x.set(e);
        REQUIRE(x.subset_of(y));
        SumsetMask sx = twobase::sumset(x);
        SumsetMask sy = twobase::sumset(y);
        for (int v = 0; v <= 2 * n; ++v)
            if (sx.contains(v)) CHECK(sy.contains(v));
    }
}

TEST_CASE("uncovered empty iff two-base") {
    for (int iter = 0; iter < 300; ++iter) {
        int n = static_cast<int>(iter % 30);
        SubsetMask x = twobase::mc_sample_subset(n, 31337, iter);
        CHECK(twobase::uncovered(x).empty() == twobase::is_two_base(x));
    }
}

TEST_CASE("nonempty subset covers twice its minimum") {
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(iter % 40);
        SubsetMask x = twobase::mc_sample_subset(n, 5150, iter);
        if (x.empty()) continue;
        CHECK(twobase::sumset(x).contains(2 * x.min_element()));
    }
}

TEST_CASE("text rendering") {
    CHECK(SubsetMask::from_elements(6, {3, 0, 1}).str() == "{0,1,3}");
    CHECK(SubsetMask(4).str() == "{}");
    CHECK(SubsetMask::from_elements(0, {0}).str() == "{0}");
}
