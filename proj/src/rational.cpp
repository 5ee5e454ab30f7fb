#include "twobase/rational.hpp"

#include "twobase/errors.hpp"

#include <cmath>
#include <utility>

namespace twobase {

BigRational::BigRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) raise(ErrorKind::BadArgument, "rational with zero denominator");
    normalize();
}

void BigRational::normalize() {
    if (den_.is_negative()) {
        den_ = -den_;
        num_ = -num_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = (num_.is_negative() ? -(num_.abs() / g) : num_ / g);
        den_ = den_ / g;
    }
}

BigRational BigRational::operator-() const {
    BigRational r = *this;
    r.num_ = -r.num_;
    return r;
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    normalize();
    return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    normalize();
    return *this;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
    num_ = num_ * rhs.num_;
    den_ = den_ * rhs.den_;
    normalize();
    return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
    if (rhs.is_zero()) raise(ErrorKind::BadArgument, "rational division by zero");
    num_ = num_ * rhs.den_;
    den_ = den_ * rhs.num_;
    normalize();
    return *this;
}

BigRational BigRational::pow(const BigRational& base, long long e) {
    if (e == 0) return BigRational(1);
    if (base.is_zero() && e < 0) raise(ErrorKind::BadArgument, "zero to a negative power");
    std::uint64_t mag = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    BigInt n = BigInt::pow(base.num_, mag);
    BigInt d = BigInt::pow(base.den_, mag);
    if (e < 0) std::swap(n, d);
    return BigRational(std::move(n), std::move(d));
}

int BigRational::cmp(const BigRational& a, const BigRational& b) {
    // denominators are positive, so cross-multiplication preserves order
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

std::string BigRational::str() const {
    if (is_integer()) return num_.str();
    return num_.str() + "/" + den_.str();
}

double BigRational::to_double() const {
    if (num_.is_zero()) return 0.0;
    long long en, ed;
    double mn = num_.frexp2(en);
    double md = den_.frexp2(ed);
    long long e = en - ed;
    double q = mn / md;
    if (e > 4000) return num_.is_negative() ? -HUGE_VAL : HUGE_VAL;
    if (e < -4000) return num_.is_negative() ? -0.0 : 0.0;
    return std::ldexp(q, static_cast<int>(e));
}

} // namespace twobase
