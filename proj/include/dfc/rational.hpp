#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "dfc/errors.hpp"

namespace dfc {

using Integer = mpz_class;

/// Arbitrary-precision rational number, always kept canonical:
/// positive denominator and gcd(|num|, den) = 1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw error("rational with zero denominator");
        v_.canonicalize();
    }
    Rational(const Integer& n, const Integer& d) : v_(n, d) {
        if (d == 0) throw error("rational with zero denominator");
        v_.canonicalize();
    }
    // Parses "p", "-p" or "p/q".
    explicit Rational(const std::string& s) : v_(s) {
        if (v_.get_den() == 0) throw error("rational with zero denominator");
        v_.canonicalize();
    }

    const Integer& num() const { return v_.get_num(); }
    const Integer& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    Rational inverse() const {
        if (is_zero()) throw error("inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    std::string str() const { return v_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.v_;
    }

private:
    explicit Rational(const mpq_class& q) : v_(q) {}
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace dfc
