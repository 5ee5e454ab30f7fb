#include "twobase/bigint.hpp"

#include "twobase/errors.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>

namespace twobase {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
}

std::size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return 64 * (limbs_.size() - 1) + (64 - std::countl_zero(limbs_.back()));
}

bool BigInt::bit(std::size_t i) const {
    std::size_t w = i / 64;
    if (w >= limbs_.size()) return false;
    return (limbs_[w] >> (i % 64)) & 1;
}

std::size_t BigInt::trailing_zero_bits() const {
    assert(!limbs_.empty());
    std::size_t w = 0;
    while (limbs_[w] == 0) ++w;
    return 64 * w + std::countr_zero(limbs_[w]);
}

int BigInt::cmp_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<u64> BigInt::add_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    const std::vector<u64>& lo = a.size() >= b.size() ? b : a;
    const std::vector<u64>& hi = a.size() >= b.size() ? a : b;
    std::vector<u64> out(hi.size() + 1, 0);
    u64 carry = 0;
    std::size_t i = 0;
    for (; i < lo.size(); ++i) {
        u64 s = hi[i] + carry;
        carry = s < carry;
        u64 t = s + lo[i];
        carry += t < s;
        out[i] = t;
    }
    for (; i < hi.size(); ++i) {
        u64 s = hi[i] + carry;
        carry = s < carry;
        out[i] = s;
    }
    out[i] = carry;
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<u64> BigInt::sub_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    assert(cmp_mag(a, b) >= 0);
    std::vector<u64> out(a.size(), 0);
    u64 borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 bi = i < b.size() ? b[i] : 0;
        u64 d = a[i] - bi;
        u64 borrow2 = d > a[i];
        u64 e = d - borrow;
        borrow2 += e > d;
        out[i] = e;
        borrow = borrow2;
    }
    assert(borrow == 0);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

void BigInt::add_signed(const BigInt& rhs, bool rhs_neg) {
    if (rhs.is_zero()) return;
    if (is_zero()) {
        limbs_ = rhs.limbs_;
        neg_ = rhs_neg;
        return;
    }
    if (neg_ == rhs_neg) {
        limbs_ = add_mag(limbs_, rhs.limbs_);
        return;
    }
    int c = cmp_mag(limbs_, rhs.limbs_);
    if (c == 0) {
        limbs_.clear();
        neg_ = false;
    } else if (c > 0) {
        limbs_ = sub_mag(limbs_, rhs.limbs_);
    } else {
        limbs_ = sub_mag(rhs.limbs_, limbs_);
        neg_ = rhs_neg;
    }
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    add_signed(rhs, rhs.neg_);
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) {
    add_signed(rhs, !rhs.neg_);
    return *this;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt{};
    BigInt out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        u64 carry = 0;
        u64 ai = a.limbs_[i];
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            u128 cur = static_cast<u128>(ai) * b.limbs_[j] + out.limbs_[i + j] + carry;
            out.limbs_[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        out.limbs_[i + b.limbs_.size()] += carry;
    }
    out.neg_ = a.neg_ != b.neg_;
    out.trim();
    return out;
}

BigInt& BigInt::operator*=(const BigInt& rhs) {
    *this = *this * rhs;
    return *this;
}

BigInt& BigInt::mul_u64(u64 m) {
    if (m == 0 || is_zero()) {
        limbs_.clear();
        neg_ = false;
        return *this;
    }
    u64 carry = 0;
    for (auto& limb : limbs_) {
        u128 cur = static_cast<u128>(limb) * m + carry;
        limb = static_cast<u64>(cur);
        carry = static_cast<u64>(cur >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigInt& BigInt::operator<<=(std::size_t bits) {
    if (is_zero() || bits == 0) return *this;
    std::size_t words = bits / 64, rem = bits % 64;
    std::size_t old = limbs_.size();
    limbs_.resize(old + words + (rem != 0), 0);
    if (rem == 0) {
        for (std::size_t i = old; i-- > 0;) limbs_[i + words] = limbs_[i];
    } else {
        for (std::size_t i = old; i-- > 0;) {
            u64 hi = limbs_[i] >> (64 - rem);
            limbs_[i + words + 1] |= hi;
            limbs_[i + words] = limbs_[i] << rem;
        }
    }
    for (std::size_t i = 0; i < words; ++i) limbs_[i] = 0;
    trim();
    return *this;
}

BigInt& BigInt::operator>>=(std::size_t bits) {
    if (is_zero() || bits == 0) return *this;
    std::size_t words = bits / 64, rem = bits % 64;
    if (words >= limbs_.size()) {
        limbs_.clear();
        neg_ = false;
        return *this;
    }
    std::size_t n = limbs_.size() - words;
    if (rem == 0) {
        for (std::size_t i = 0; i < n; ++i) limbs_[i] = limbs_[i + words];
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            u64 lo = limbs_[i + words] >> rem;
            u64 hi = (i + words + 1 < limbs_.size()) ? (limbs_[i + words + 1] << (64 - rem)) : 0;
            limbs_[i] = lo | hi;
        }
    }
    limbs_.resize(n);
    trim();
    return *this;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.neg_ ? -c : c;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::power_of_two(u64 e) {
    BigInt r;
    r.limbs_.assign(e / 64 + 1, 0);
    r.limbs_.back() = u64(1) << (e % 64);
    return r;
}

BigInt BigInt::pow(const BigInt& base, u64 exp) {
    BigInt result(1);
    BigInt b = base;
    while (exp) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return result;
}

namespace {

// Single-limb divmod: in-place quotient, returns remainder. den != 0.
u64 divmod_small(std::vector<u64>& num, u64 den) {
    u64 rem = 0;
    for (std::size_t i = num.size(); i-- > 0;) {
        u128 cur = (static_cast<u128>(rem) << 64) | num[i];
        num[i] = static_cast<u64>(cur / den);
        rem = static_cast<u64>(cur % den);
    }
    while (!num.empty() && num.back() == 0) num.pop_back();
    return rem;
}

} // namespace

void BigInt::divmod(const BigInt& num, const BigInt& den, BigInt& q, BigInt& r) {
    if (den.is_zero()) raise(ErrorKind::BadArgument, "division by zero");
    if (num.neg_ || den.neg_) raise(ErrorKind::BadArgument, "divmod requires non-negative operands");
    if (cmp_mag(num.limbs_, den.limbs_) < 0) {
        r = num;
        q = BigInt{};
        return;
    }
    if (den.limbs_.size() == 1) {
        std::vector<u64> quo = num.limbs_;
        u64 rem = divmod_small(quo, den.limbs_[0]);
        q = BigInt{};
        q.limbs_ = std::move(quo);
        r = BigInt(rem);
        return;
    }

    // Knuth algorithm D. Normalize so the divisor's top limb has its high bit set.
    const int shift = std::countl_zero(den.limbs_.back());
    std::vector<u64> u(num.limbs_.size() + 1, 0);
    std::vector<u64> v(den.limbs_.size(), 0);
    if (shift == 0) {
        std::copy(num.limbs_.begin(), num.limbs_.end(), u.begin());
        v = den.limbs_;
    } else {
        for (std::size_t i = num.limbs_.size(); i-- > 0;) {
            u[i + 1] |= num.limbs_[i] >> (64 - shift);
            u[i] = num.limbs_[i] << shift;
        }
        for (std::size_t i = den.limbs_.size(); i-- > 0;) {
            if (i + 1 < den.limbs_.size()) v[i + 1] |= den.limbs_[i] >> (64 - shift);
            v[i] = den.limbs_[i] << shift;
        }
    }
    const std::size_t n = v.size();
    const std::size_t m = u.size() - 1 - n;
    std::vector<u64> quo(m + 1, 0);

    for (std::size_t j = m + 1; j-- > 0;) {
        u128 top = (static_cast<u128>(u[j + n]) << 64) | u[j + n - 1];
        u128 qhat = top / v[n - 1];
        u128 rhat = top % v[n - 1];
        while (qhat >> 64 ||
               static_cast<u128>(static_cast<u64>(qhat)) * v[n - 2] >
                   ((rhat << 64) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >> 64) break;
        }
        // multiply-subtract qhat * v from u[j .. j+n]
        u64 qh = static_cast<u64>(qhat);
        u64 borrow = 0, mul_carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u128 p = static_cast<u128>(qh) * v[i] + mul_carry;
            mul_carry = static_cast<u64>(p >> 64);
            u64 plo = static_cast<u64>(p);
            u64 d = u[i + j] - plo;
            u64 b2 = d > u[i + j];
            u64 e = d - borrow;
            b2 += e > d;
            u[i + j] = e;
            borrow = b2;
        }
        u64 d = u[j + n] - mul_carry;
        u64 b2 = d > u[j + n];
        u64 e = d - borrow;
        b2 += e > d;
        u[j + n] = e;

        if (b2) {
            // qhat was one too large; add divisor back
            --qh;
            u64 carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u64 s = u[i + j] + carry;
                carry = s < carry;
                u64 t = s + v[i];
                carry += t < s;
                u[i + j] = t;
            }
            u[j + n] += carry;
        }
        quo[j] = qh;
    }

    q = BigInt{};
    q.limbs_ = std::move(quo);
    q.trim();
    r = BigInt{};
    u.resize(n);
    r.limbs_ = std::move(u);
    r.trim();
    if (shift) r >>= static_cast<std::size_t>(shift);
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::size_t az = a.trailing_zero_bits();
    std::size_t bz = b.trailing_zero_bits();
    std::size_t common = std::min(az, bz);
    a >>= az;
    b >>= bz;
    // both odd from here on
    while (true) {
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) break;
        if (c < 0) std::swap(a, b);
        a.limbs_ = sub_mag(a.limbs_, b.limbs_);
        a.trim();
        a >>= a.trailing_zero_bits();
    }
    return b << common;
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) raise(ErrorKind::ParseError, "empty integer literal");
    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) raise(ErrorKind::ParseError, "integer literal has no digits");
    BigInt out;
    constexpr u64 chunk_pow[19] = {10ull,
                                   100ull,
                                   1000ull,
                                   10000ull,
                                   100000ull,
                                   1000000ull,
                                   10000000ull,
                                   100000000ull,
                                   1000000000ull,
                                   10000000000ull,
                                   100000000000ull,
                                   1000000000000ull,
                                   10000000000000ull,
                                   100000000000000ull,
                                   1000000000000000ull,
                                   10000000000000000ull,
                                   100000000000000000ull,
                                   1000000000000000000ull,
                                   10000000000000000000ull};
    while (pos < s.size()) {
        std::size_t take = std::min<std::size_t>(19, s.size() - pos);
        u64 chunk = 0;
        for (std::size_t i = 0; i < take; ++i) {
            char c = s[pos + i];
            if (c < '0' || c > '9')
                raise(ErrorKind::ParseError, "invalid digit in integer literal");
            chunk = chunk * 10 + static_cast<u64>(c - '0');
        }
        out.mul_u64(chunk_pow[take - 1]);
        out += BigInt(chunk);
        pos += take;
    }
    if (!out.is_zero()) out.neg_ = neg;
    return out;
}

std::string BigInt::str() const {
    if (is_zero()) return "0";
    std::vector<u64> mag = limbs_;
    constexpr u64 base = 10000000000000000000ull; // 10^19
    std::vector<u64> chunks;
    while (!mag.empty()) chunks.push_back(divmod_small(mag, base));
    std::string out;
    if (neg_) out.push_back('-');
    out += std::to_string(chunks.back());
    char buf[20];
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof buf, "%019llu", static_cast<unsigned long long>(chunks[i]));
        out += buf;
    }
    return out;
}

double BigInt::frexp2(long long& exp) const {
    if (is_zero()) {
        exp = 0;
        return 0.0;
    }
    std::size_t bl = bit_length();
    // assemble the top (up to) 64 bits of the magnitude
    u64 top = 0;
    if (bl <= 64) {
        top = limbs_[0] << (64 - bl);
    } else {
        std::size_t lo_bit = bl - 64;
        std::size_t w = lo_bit / 64, r = lo_bit % 64;
        top = limbs_[w] >> r;
        if (r && w + 1 < limbs_.size()) top |= limbs_[w + 1] << (64 - r);
    }
    double m = std::ldexp(static_cast<double>(top), -64); // in [0.5, 1)
    exp = static_cast<long long>(bl);
    return neg_ ? -m : m;
}

double BigInt::to_double() const {
    long long e;
    double m = frexp2(e);
    return std::ldexp(m, static_cast<int>(e));
}

} // namespace twobase
