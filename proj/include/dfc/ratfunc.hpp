#pragma once

#include <utility>

#include "dfc/errors.hpp"
#include "dfc/unipoly.hpp"

namespace dfc {

/// Rational function in x, kept reduced with a monic denominator.
class RatFunc {
public:
    RatFunc() : num_(), den_(UniPoly::constant(1)) {}
    RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw error("rational function with zero denominator");
        normalize();
    }
    explicit RatFunc(UniPoly num) : num_(std::move(num)), den_(UniPoly::constant(1)) {}
    explicit RatFunc(const Rational& c) : num_(UniPoly::constant(c)), den_(UniPoly::constant(1)) {}

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    /// The underlying polynomial; throws if the denominator is not a unit.
    UniPoly as_polynomial() const {
        if (!is_polynomial()) throw internal_error("rational function is not polynomial");
        return den_.lc().inverse() * num_;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw error("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc operator-() const { return RatFunc(-num_, den_); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = UniPoly::constant(1);
            return;
        }
        UniPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.div_exact(g);
            den_ = den_.div_exact(g);
        }
        Rational lc = den_.lc();
        if (!lc.is_one()) {
            Rational inv = lc.inverse();
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }
    UniPoly num_, den_;
};

} // namespace dfc
