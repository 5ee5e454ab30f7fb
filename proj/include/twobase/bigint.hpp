#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace twobase {

// Arbitrary-precision signed integer, sign-magnitude over little-endian
// 64-bit limbs. Sizes in this project stay below a few thousand limbs
// (powers like 3^n for n <= ~2*10^4), so schoolbook arithmetic is ample.
class BigInt {
public:
    BigInt() = default;
    template <std::integral T>
    BigInt(T v) {
        if (v == 0) return;
        std::uint64_t mag;
        if constexpr (std::is_signed_v<T>) {
            neg_ = v < 0;
            mag = neg_ ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
        } else {
            mag = static_cast<std::uint64_t>(v);
        }
        limbs_.push_back(mag);
    }

    // Decimal parse, optional leading '-'. Throws ParseError on bad input.
    static BigInt from_string(std::string_view s);
    static BigInt power_of_two(std::uint64_t e);
    static BigInt pow(const BigInt& base, std::uint64_t exp);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return neg_; }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    // Number of significant bits of the magnitude; 0 for zero.
    std::size_t bit_length() const;
    bool bit(std::size_t i) const;
    // Requires non-zero value.
    std::size_t trailing_zero_bits() const;

    std::string str() const;
    double to_double() const;
    // Magnitude as m * 2^exp with m in [0.5, 1); returns signed m. Zero -> 0, exp 0.
    double frexp2(long long& exp) const;
    // Low 64 bits of the magnitude (0 for zero).
    std::uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

    BigInt abs() const;
    BigInt operator-() const;

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);
    BigInt& operator<<=(std::size_t bits);
    BigInt& operator>>=(std::size_t bits);
    BigInt& mul_u64(std::uint64_t m);

    friend BigInt operator+(BigInt a, const BigInt& b) { a += b; return a; }
    friend BigInt operator-(BigInt a, const BigInt& b) { a -= b; return a; }
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt operator<<(std::size_t bits) const { BigInt r = *this; r <<= bits; return r; }
    BigInt operator>>(std::size_t bits) const { BigInt r = *this; r >>= bits; return r; }

    // Signed three-way comparison.
    static int cmp(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    // Euclidean division for non-negative operands: num = q*den + r, 0 <= r < den.
    // Throws BadArgument on den == 0 or negative inputs.
    static void divmod(const BigInt& num, const BigInt& den, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    // gcd of magnitudes (binary algorithm); gcd(0, b) = |b|.
    static BigInt gcd(BigInt a, BigInt b);

private:
    std::vector<std::uint64_t> limbs_; // little-endian, no trailing zero limbs
    bool neg_ = false;                 // never set for zero

    void trim();
    static int cmp_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    static std::vector<std::uint64_t> add_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b);
    // Requires |a| >= |b|.
    static std::vector<std::uint64_t> sub_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b);
    void add_signed(const BigInt& rhs, bool rhs_neg);
};

} // namespace twobase
