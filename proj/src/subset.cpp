#include "twobase/subset.hpp"

#include <algorithm>
#include <cassert>

namespace twobase {

namespace {

inline std::size_t words_for_bits(int bits) {
    return static_cast<std::size_t>((bits + 63) / 64);
}

// dst |= src << shift, over dst.size() words (overflow beyond dst is dropped)
inline void shift_or(std::vector<std::uint64_t>& dst,
                     const std::vector<std::uint64_t>& src, int shift) {
    const std::size_t wshift = static_cast<std::size_t>(shift) / 64;
    const int bshift = shift % 64;
    const std::size_t nd = dst.size();
    if (bshift == 0) {
        for (std::size_t i = 0; i + wshift < nd && i < src.size(); ++i)
            dst[i + wshift] |= src[i];
    } else {
        for (std::size_t i = 0; i + wshift < nd && i < src.size(); ++i) {
            dst[i + wshift] |= src[i] << bshift;
            if (i + wshift + 1 < nd) dst[i + wshift + 1] |= src[i] >> (64 - bshift);
        }
    }
}

} // namespace

SubsetMask::SubsetMask(int n) : n_(n), bits_(words_for_bits(n + 1), 0) {
    assert(n >= 0);
}

SubsetMask SubsetMask::from_elements(int n, std::initializer_list<int> elems) {
    SubsetMask m(n);
    for (int e : elems) m.set(e);
    return m;
}

SubsetMask SubsetMask::from_elements(int n, const std::vector<int>& elems) {
    SubsetMask m(n);
    for (int e : elems) m.set(e);
    return m;
}

SubsetMask SubsetMask::from_word(int n, std::uint64_t mask) {
    assert(n >= 0 && n <= 63);
    SubsetMask m(n);
    std::uint64_t keep = n == 63 ? ~0ull : ((1ull << (n + 1)) - 1);
    m.bits_[0] = mask & keep;
    return m;
}

bool SubsetMask::contains(int i) const {
    if (i < 0 || i > n_) return false;
    return (bits_[i / 64] >> (i % 64)) & 1;
}

void SubsetMask::set(int i) {
    assert(i >= 0 && i <= n_);
    bits_[i / 64] |= std::uint64_t(1) << (i % 64);
}

bool SubsetMask::empty() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

int SubsetMask::count() const {
    int c = 0;
    for (std::uint64_t w : bits_) c += __builtin_popcountll(w);
    return c;
}

int SubsetMask::min_element() const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w]) return static_cast<int>(64 * w + __builtin_ctzll(bits_[w]));
    return -1;
}

std::vector<int> SubsetMask::elements() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            out.push_back(static_cast<int>(64 * w + __builtin_ctzll(word)));
            word &= word - 1;
        }
    }
    return out;
}

std::string SubsetMask::str() const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) out += ",";
        out += std::to_string(e);
        first = false;
    }
    out += "}";
    return out;
}

bool operator==(const SubsetMask& a, const SubsetMask& b) {
    assert(a.n_ == b.n_);
    return a.n_ == b.n_ && a.bits_ == b.bits_;
}

bool SubsetMask::subset_of(const SubsetMask& other) const {
    assert(n_ == other.n_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~other.bits_[i]) return false;
    return true;
}

SumsetMask::SumsetMask(int n) : n_(n), bits_(words_for_bits(2 * n + 1), 0) {
    assert(n >= 0);
}

bool SumsetMask::contains(int s) const {
    if (s < 0 || s > 2 * n_) return false;
    return (bits_[s / 64] >> (s % 64)) & 1;
}

SumsetMask sumset(const SubsetMask& x) {
    SumsetMask out(x.n_);
    for (int e : x.elements()) shift_or(out.bits_, x.bits_, e);
    return out;
}

bool is_two_base(const SubsetMask& x) {
    SumsetMask s = sumset(x);
    const int n = x.n();
    std::size_t full = static_cast<std::size_t>(n + 1) / 64;
    for (std::size_t w = 0; w < full; ++w)
        if (s.bits_[w] != ~std::uint64_t(0)) return false;
    int rem = (n + 1) % 64;
    if (rem) {
        std::uint64_t need = (std::uint64_t(1) << rem) - 1;
        if ((s.bits_[full] & need) != need) return false;
    }
    return true;
}

SubsetMask uncovered(const SubsetMask& x) {
    SumsetMask s = sumset(x);
    const int n = x.n();
    SubsetMask out(n);
    for (std::size_t w = 0; w < out.bits_.size(); ++w) out.bits_[w] = ~s.bits_[w];
    int rem = (n + 1) % 64;
    if (rem) out.bits_.back() &= (std::uint64_t(1) << rem) - 1;
    return out;
}

SubsetMask complete(const SubsetMask& x) {
    SubsetMask missing = uncovered(x);
    SubsetMask out = x;
    for (std::size_t w = 0; w < out.bits_.size(); ++w) out.bits_[w] |= missing.bits_[w];
    return out;
}

} // namespace twobase
