#pragma once

#include "chipfire/rational.hpp"

#include <compare>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace chipfire {

/// Error raised by the number parser; carries the offending position.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Element of the real quadratic field Q(sqrt 2): rat + coef * sqrt(2), both
/// components canonical rationals. Plain rationals are the coef == 0 case.
/// All comparisons are decided by exact integer sign tests; no floating point
/// enters any decision.
class QF2 {
public:
    QF2() = default;
    QF2(long long n) : rat_(n) {}
    QF2(Rational r) : rat_(std::move(r)) {}
    QF2(Rational r, Rational c) : rat_(std::move(r)), coef_(std::move(c)) {}

    static QF2 sqrt2() { return QF2(Rational(0), Rational(1)); }

    const Rational& rat() const { return rat_; }
    const Rational& coef() const { return coef_; }

    bool is_zero() const { return rat_.is_zero() && coef_.is_zero(); }
    bool is_rational() const { return coef_.is_zero(); }

    QF2 operator-() const { return QF2(-rat_, -coef_); }

    QF2 operator+(const QF2& o) const { return QF2(rat_ + o.rat_, coef_ + o.coef_); }
    QF2 operator-(const QF2& o) const { return QF2(rat_ - o.rat_, coef_ - o.coef_); }

    QF2 operator*(const QF2& o) const {
        // (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s, s^2 = 2
        return QF2(rat_ * o.rat_ + Rational(2) * coef_ * o.coef_,
                   rat_ * o.coef_ + coef_ * o.rat_);
    }

    QF2 operator/(const QF2& o) const {
        if (o.is_zero())
            throw std::domain_error("division by zero in Q(sqrt 2)");
        // Multiply by the conjugate; c^2 - 2 d^2 = 0 only for c = d = 0.
        Rational n = o.rat_ * o.rat_ - Rational(2) * o.coef_ * o.coef_;
        QF2 conj(o.rat_, -o.coef_);
        QF2 prod = *this * conj;
        return QF2(prod.rat_ / n, prod.coef_ / n);
    }

    QF2& operator+=(const QF2& o) { return *this = *this + o; }
    QF2& operator-=(const QF2& o) { return *this = *this - o; }
    QF2& operator*=(const QF2& o) { return *this = *this * o; }
    QF2& operator/=(const QF2& o) { return *this = *this / o; }

    /// Exact sign under the real embedding sqrt(2) = 1.41421...
    /// Mixed-sign components are decided by comparing a^2 against 2 b^2.
    int sign() const {
        int sa = rat_.sign();
        int sb = coef_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rational a2 = rat_ * rat_;
        Rational b2_twice = Rational(2) * coef_ * coef_;
        if (a2 == b2_twice)
            throw std::logic_error("sqrt(2) cannot be rational");
        return a2 > b2_twice ? sa : sb;
    }

    bool operator==(const QF2& o) const { return rat_ == o.rat_ && coef_ == o.coef_; }

    std::strong_ordering operator<=>(const QF2& o) const {
        int s = (*this - o).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    QF2 abs() const { return sign() < 0 ? -*this : *this; }

    /// Approximation for reports only; never used in decisions.
    double to_double() const {
        return rat_.to_double() + coef_.to_double() * std::sqrt(2.0);
    }

    std::string str() const {
        if (coef_.is_zero()) return rat_.str();
        std::string tail = coef_.str() + "*sqrt(2)";
        if (rat_.is_zero()) return tail;
        return rat_.str() + "+" + tail;
    }

private:
    Rational rat_;
    Rational coef_;
};

/// The unique n with n*a <= b < (n+1)*a, for a > 0, b >= 0. This is the
/// quotient of one Euclidean subtraction phase, found by exact comparisons.
inline Int floor_ratio(const QF2& b, const QF2& a) {
    if (a.sign() <= 0)
        throw std::domain_error("floor_ratio requires a > 0");
    if (b.sign() < 0)
        throw std::domain_error("floor_ratio requires b >= 0");
    // Exponential bracket then binary search; everything stays exact.
    Int hi = 1;
    while (a * QF2(Rational(hi)) <= b) hi <<= 1;
    Int lo = 0; // invariant: lo*a <= b < hi*a
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (a * QF2(Rational(mid)) <= b)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

/// Limit of first + first*ratio + first*ratio^2 + ... for 0 <= ratio < 1.
inline QF2 geometric_sum(const QF2& first, const QF2& ratio) {
    if (ratio.sign() < 0 || ratio >= QF2(1))
        throw std::domain_error("geometric_sum requires 0 <= ratio < 1");
    return first / (QF2(1) - ratio);
}

namespace detail {

inline Int parse_digits(const std::string& s, std::size_t& i) {
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start)
        throw parse_error("expected digits", start);
    return Int(s.substr(start, i - start));
}

// rat := ["-"] digits ["/" digits]
inline Rational parse_rat(const std::string& s, std::size_t& i) {
    bool neg = false;
    if (i < s.size() && s[i] == '-') {
        neg = true;
        ++i;
    }
    Int num = parse_digits(s, i);
    Int den = 1;
    if (i < s.size() && s[i] == '/') {
        std::size_t slash = i;
        ++i;
        den = parse_digits(s, i);
        if (den == 0)
            throw parse_error("zero denominator", slash + 1);
    }
    if (neg) num = -num;
    return Rational(num, den);
}

inline void expect(const std::string& s, std::size_t& i, const char* lit) {
    for (const char* p = lit; *p; ++p, ++i) {
        if (i >= s.size() || s[i] != *p)
            throw parse_error(std::string("expected \"") + lit + "\"", i);
    }
}

} // namespace detail

/// Grammar: value := rat | rat "+" rat "*sqrt(2)" | rat "*sqrt(2)"
/// with rat := ["-"] digits ["/" digits]. No whitespace.
inline QF2 parse_qf2(const std::string& s) {
    std::size_t i = 0;
    Rational first = detail::parse_rat(s, i);
    if (i == s.size()) return QF2(first);
    if (s[i] == '*') {
        detail::expect(s, i, "*sqrt(2)");
        if (i != s.size())
            throw parse_error("trailing characters", i);
        return QF2(Rational(0), first);
    }
    if (s[i] == '+') {
        ++i;
        Rational coef = detail::parse_rat(s, i);
        detail::expect(s, i, "*sqrt(2)");
        if (i != s.size())
            throw parse_error("trailing characters", i);
        return QF2(first, coef);
    }
    throw parse_error("expected end, '+' or '*sqrt(2)'", i);
}

inline std::string render_qf2(const QF2& x) { return x.str(); }

} // namespace chipfire
