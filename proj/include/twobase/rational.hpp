#pragma once

#include "twobase/bigint.hpp"

#include <string>

namespace twobase {

// Exact rational, canonical form: denominator > 0, gcd(|num|, den) = 1,
// sign carried by the numerator. Every construction normalizes.
class BigRational {
public:
    BigRational() : num_(0), den_(1) {}
    BigRational(BigInt value) : num_(std::move(value)), den_(1) {}
    BigRational(long long value) : num_(value), den_(1) {}
    BigRational(int value) : num_(value), den_(1) {}
    // Throws BadArgument if den == 0.
    BigRational(BigInt num, BigInt den);
    static BigRational from_ratio(long long num, long long den) {
        return BigRational(BigInt(num), BigInt(den));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }
    bool is_integer() const { return den_ == BigInt(1); }

    BigRational operator-() const;
    BigRational& operator+=(const BigRational& rhs);
    BigRational& operator-=(const BigRational& rhs);
    BigRational& operator*=(const BigRational& rhs);
    BigRational& operator/=(const BigRational& rhs); // throws BadArgument on /0

    friend BigRational operator+(BigRational a, const BigRational& b) { a += b; return a; }
    friend BigRational operator-(BigRational a, const BigRational& b) { a -= b; return a; }
    friend BigRational operator*(BigRational a, const BigRational& b) { a *= b; return a; }
    friend BigRational operator/(BigRational a, const BigRational& b) { a /= b; return a; }

    // Negative exponents invert; pow(0, e<0) throws BadArgument.
    static BigRational pow(const BigRational& base, long long e);

    static int cmp(const BigRational& a, const BigRational& b);
    friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return cmp(a, b) >= 0; }

    std::string str() const; // "num/den", or just "num" when den == 1
    // Scale-aware: works even when num and den individually overflow double range.
    double to_double() const;

private:
    BigInt num_;
    BigInt den_;
    void normalize();
};

} // namespace twobase
