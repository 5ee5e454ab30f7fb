#pragma once

#include "twobase/subset.hpp"

#include <cstdint>
#include <vector>

namespace twobase {

// Threefry-2x64, 20 rounds: a keyed counter-based block function. Output
// depends only on (key, counter), so sample i of a run is identical no
// matter how the index range is split across workers or platforms.
struct Threefry2x64 {
    std::uint64_t key0;
    std::uint64_t key1;

    // counter (c0, c1) -> two output words
    void block(std::uint64_t c0, std::uint64_t c1,
               std::uint64_t& out0, std::uint64_t& out1) const;
};

// Fills `words` (already sized) with pseudorandom bits for sample `index`.
void random_words(std::uint64_t seed, std::uint64_t index, std::vector<std::uint64_t>& words);

// Uniformly random subset of [n]_0, keyed on (seed, index).
SubsetMask mc_sample_subset(int n, std::uint64_t seed, std::uint64_t index);

} // namespace twobase
