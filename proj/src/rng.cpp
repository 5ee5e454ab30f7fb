#include "twobase/rng.hpp"

#include <bit>

namespace twobase {

namespace {

constexpr std::uint64_t kParity = 0x1BD11BDAA9FC1A22ull;
// rotation schedule for the 2x64 variant
constexpr int kRot[8] = {16, 42, 12, 31, 16, 32, 24, 21};

} // namespace

void Threefry2x64::block(std::uint64_t c0, std::uint64_t c1,
                         std::uint64_t& out0, std::uint64_t& out1) const {
    const std::uint64_t ks[3] = {key0, key1, kParity ^ key0 ^ key1};
    std::uint64_t x0 = c0 + ks[0];
    std::uint64_t x1 = c1 + ks[1];
    for (int round = 0; round < 20; ++round) {
        x0 += x1;
        x1 = std::rotl(x1, kRot[round % 8]);
        x1 ^= x0;
        if ((round & 3) == 3) {
            const std::uint64_t s = static_cast<std::uint64_t>(round / 4 + 1);
            x0 += ks[s % 3];
            x1 += ks[(s + 1) % 3] + s;
        }
    }
    out0 = x0;
    out1 = x1;
}

void random_words(std::uint64_t seed, std::uint64_t index, std::vector<std::uint64_t>& words) {
    const Threefry2x64 prf{seed, 0x7477426153654564ull};
    std::uint64_t r0 = 0, r1 = 0;
    for (std::size_t w = 0; w < words.size(); ++w) {
        if ((w & 1) == 0) prf.block(index, w / 2, r0, r1);
        words[w] = (w & 1) ? r1 : r0;
    }
}

SubsetMask mc_sample_subset(int n, std::uint64_t seed, std::uint64_t index) {
    const std::size_t nwords = static_cast<std::size_t>(n / 64) + 1;
    std::vector<std::uint64_t> words(nwords);
    random_words(seed, index, words);
    int rem = (n + 1) % 64;
    if (rem) words.back() &= (std::uint64_t(1) << rem) - 1;
    SubsetMask out(n);
    for (std::size_t w = 0; w < nwords; ++w) {
        std::uint64_t word = words[w];
        while (word) {
            out.set(static_cast<int>(64 * w + std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

} // namespace twobase
