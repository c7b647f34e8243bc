// SPDX-License-Identifier: MIT

#include "vcnls/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace vcnls {

namespace {

__extension__ using WideInt = __int128;

WideInt gcd_wide(WideInt a, WideInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const WideInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(WideInt v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

struct RationalAccess {
    static Rational from_wide(WideInt num, WideInt den);
};

Rational RationalAccess::from_wide(WideInt num, WideInt den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const WideInt g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits(num) || !fits(den)) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return Rational(Rational::Raw{}, static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    *this = RationalAccess::from_wide(num, den);
}

Rational operator+(const Rational& a, const Rational& b) {
    return RationalAccess::from_wide(static_cast<WideInt>(a.num_) * b.den_ +
                                   static_cast<WideInt>(b.num_) * a.den_,
                               static_cast<WideInt>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return RationalAccess::from_wide(static_cast<WideInt>(a.num_) * b.num_,
                               static_cast<WideInt>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    return RationalAccess::from_wide(static_cast<WideInt>(a.num_) * b.den_,
                               static_cast<WideInt>(a.den_) * b.num_);
}

Rational Rational::operator-() const { return RationalAccess::from_wide(-static_cast<WideInt>(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const WideInt lhs = static_cast<WideInt>(a.num_) * b.den_;
    const WideInt rhs = static_cast<WideInt>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace vcnls
