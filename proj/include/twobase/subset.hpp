#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace twobase {

class SubsetMask;
class SumsetMask;

SumsetMask sumset(const SubsetMask& x);
bool is_two_base(const SubsetMask& x);
SubsetMask uncovered(const SubsetMask& x);
SubsetMask complete(const SubsetMask& x);

// A finite subset of [n]_0 = {0, ..., n}, one bit per element. Values are
// immutable once built (the mutating helpers exist for construction only);
// all operations below are pure functions.
class SubsetMask {
public:
    explicit SubsetMask(int n);
    static SubsetMask from_elements(int n, std::initializer_list<int> elems);
    static SubsetMask from_elements(int n, const std::vector<int>& elems);
    // Low n+1 bits of `mask`; requires n <= 63.
    static SubsetMask from_word(int n, std::uint64_t mask);

    int n() const { return n_; }
    bool contains(int i) const;
    void set(int i);
    bool empty() const;
    int count() const;
    int min_element() const; // -1 when empty
    std::vector<int> elements() const;

    std::span<const std::uint64_t> words() const { return bits_; }
    std::uint64_t word0() const { return bits_.empty() ? 0 : bits_[0]; }

    // "{0,1,3}": comma-separated sorted elements in braces.
    std::string str() const;

    friend bool operator==(const SubsetMask& a, const SubsetMask& b);
    friend bool operator!=(const SubsetMask& a, const SubsetMask& b) { return !(a == b); }
    // is a subset of
    bool subset_of(const SubsetMask& other) const;

private:
    int n_;
    std::vector<std::uint64_t> bits_; // ceil((n+1)/64) words
    friend class SumsetMask;
    friend SumsetMask twobase::sumset(const SubsetMask&);
    friend SubsetMask twobase::uncovered(const SubsetMask&);
    friend SubsetMask twobase::complete(const SubsetMask&);
};

// X + X over [2n]_0, bit s set iff s is a pairwise sum of X (x = y allowed).
class SumsetMask {
public:
    explicit SumsetMask(int n);
    int n() const { return n_; }
    bool contains(int s) const;
    std::span<const std::uint64_t> words() const { return bits_; }

private:
    int n_;
    std::vector<std::uint64_t> bits_; // ceil((2n+1)/64) words
    friend SumsetMask twobase::sumset(const SubsetMask&);
    friend SubsetMask twobase::uncovered(const SubsetMask&);
    friend bool twobase::is_two_base(const SubsetMask&);
};

// The four operations above, declared before the classes:
//   sumset       shift-or kernel, one shifted OR of the bit vector per element
//   is_two_base  true iff [n]_0 is contained in X + X
//   uncovered    [n]_0 \ (X + X), as a subset of the same universe
//   complete     X together with everything it fails to generate; always a 2-base

} // namespace twobase
