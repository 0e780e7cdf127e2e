#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <iosfwd>
#include <ostream>

#include "rotalg/errors.hpp"

namespace rotalg {

// Exact rational arithmetic on 64-bit numerator/denominator, always reduced,
// denominator positive. Intermediate products go through __int128 and are
// range-checked; period-group inputs are desk scale, so overflow means a
// malformed input rather than a legitimate value.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) fail(errc::bad_input, "rational with zero denominator");
        normalize();
    }

    static Rational from_string(const std::string& s);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    double to_double() const { return double(num_) / double(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) fail(errc::bad_input, "rational division by zero");
        return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // gcd in the rational sense: the positive generator of aZ + bZ.
    static Rational gcd(const Rational& a, const Rational& b) {
        if (a.is_zero()) return b.abs();
        if (b.is_zero()) return a.abs();
        // gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s)
        __int128 g = gcd128(i128abs((__int128)a.num_ * b.den_), i128abs((__int128)b.num_ * a.den_));
        return make(g, (__int128)a.den_ * b.den_);
    }

    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    std::int64_t num_, den_;

    static __int128 i128abs(__int128 v) { return v < 0 ? -v : v; }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
    static Rational make(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(i128abs(n), d);
        if (g > 1) { n /= g; d /= g; }
        const __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            fail(errc::bad_input, "rational overflow");
        Rational r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }
};

inline Rational Rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            size_t pos = 0;
            std::int64_t n = std::stoll(s, &pos);
            if (pos != s.size()) fail(errc::bad_input, "trailing characters in rational '" + s + "'");
            return Rational(n);
        }
        size_t p1 = 0, p2 = 0;
        std::int64_t n = std::stoll(s.substr(0, slash), &p1);
        std::int64_t d = std::stoll(s.substr(slash + 1), &p2);
        if (p1 != slash || p2 != s.size() - slash - 1)
            fail(errc::bad_input, "trailing characters in rational '" + s + "'");
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        fail(errc::bad_input, "cannot parse rational '" + s + "'");
    } catch (const std::out_of_range&) {
        fail(errc::bad_input, "rational out of range '" + s + "'");
    }
}

} // namespace rotalg
