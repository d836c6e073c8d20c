#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/rational.hpp"

namespace dfc {

/// Dense univariate polynomial over Q, canonical form: no trailing zero
/// coefficients, so degree() always reports the true degree (-1 for zero).
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(std::initializer_list<Rational> cs) : c_(cs) { trim(); }
    explicit UniPoly(std::vector<Rational> cs) : c_(std::move(cs)) { trim(); }
    static UniPoly constant(const Rational& r) { return UniPoly({r}); }
    static UniPoly monomial(const Rational& r, int k) {
        std::vector<Rational> cs(k + 1);
        cs[k] = r;
        return UniPoly(std::move(cs));
    }
    static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const Rational& coeff(int k) const {
        static const Rational zero;
        if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
        return c_[k];
    }
    const Rational& lc() const {
        if (is_zero()) throw error("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    UniPoly operator-() const {
        std::vector<Rational> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return UniPoly(std::move(r));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(int(i)) + b.coeff(int(i));
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(int(i)) - b.coeff(int(i));
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const Rational& s, const UniPoly& a) {
        if (s.is_zero()) return UniPoly();
        std::vector<Rational> r(a.c_.size());
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = s * a.c_[i];
        return UniPoly(std::move(r));
    }
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    /// Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw error("polynomial division by zero");
        UniPoly r = *this;
        if (r.degree() < d.degree()) return {UniPoly(), r};
        std::vector<Rational> q(r.degree() - d.degree() + 1);
        const Rational dl = d.lc().inverse();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Rational f = r.lc() * dl;
            q[k] = f;
            // r -= f * x^k * d, done in place
            std::vector<Rational> rc = r.c_;
            for (int i = 0; i <= d.degree(); ++i) rc[i + k] -= f * d.c_[i];
            r = UniPoly(std::move(rc));
        }
        return {UniPoly(std::move(q)), r};
    }

    /// Exact division; throws if the remainder is nonzero.
    UniPoly div_exact(const UniPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw internal_error("inexact polynomial division");
        return q;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rational(long(i)) * c_[i];
        return UniPoly(std::move(r));
    }

    /// Horner evaluation over any commutative ring with Rational embedding.
    template <typename R>
    R eval(const R& x) const {
        R acc = ring_zero(x);
        for (int i = degree(); i >= 0; --i) acc = acc * x + ring_from_rational(x, c_[i]);
        return acc;
    }
    Rational eval(const Rational& x) const {
        Rational acc;
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    /// Coefficients of p(a + s) as a polynomial in s, over any ring
    /// containing a. Repeated synthetic division by (s - a).
    template <typename R>
    std::vector<R> shifted_coeffs(const R& a) const {
        int n = std::max(degree(), 0);
        std::vector<R> w(size_t(n) + 1, ring_zero(a));
        for (int i = 0; i <= degree(); ++i) w[i] = ring_from_rational(a, c_[i]);
        if (is_zero()) return w;
        for (int k = 0; k < n; ++k)
            for (int i = n - 1; i >= k; --i) w[i] = w[i] + a * w[i + 1];
        return w;
    }

    UniPoly monic() const {
        if (is_zero()) return UniPoly();
        return lc().inverse() * (*this);
    }

    /// Content as gcd of numerators over lcm of denominators; zero poly -> 0.
    Rational content() const {
        if (is_zero()) return Rational(0);
        Integer num = 0, den = 1;
        for (const auto& r : c_) {
            if (r.is_zero()) continue;
            Integer g;
            mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), r.num().get_mpz_t());
            num = g;
            Integer l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), r.den().get_mpz_t());
            den = l;
        }
        Rational c(num, den);
        return lc().sign() < 0 ? -c : c;
    }

    UniPoly primitive_part() const {
        if (is_zero()) return UniPoly();
        return content().inverse() * (*this);
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += c_[i].sign() > 0 ? " + " : " - ";
            else if (c_[i].sign() < 0) s += "-";
            Rational a = abs(c_[i]);
            if (i == 0 || !a.is_one()) s += a.str();
            if (i > 0) {
                if (!a.is_one()) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
        return os << p.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Ring hooks used by the templated helpers above; the QuotElem overloads
// live next to that type.
inline Rational ring_zero(const Rational&) { return Rational(0); }
inline Rational ring_from_rational(const Rational&, const Rational& q) { return q; }

/// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Half-extended gcd: returns (g, s) with s*a = g (mod b), g monic.
inline std::pair<UniPoly, UniPoly> poly_half_xgcd(const UniPoly& a, const UniPoly& b) {
    UniPoly r0 = a, r1 = b;
    UniPoly s0 = UniPoly::constant(1), s1;
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        UniPoly s = s0 - q * s1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s);
    }
    if (r0.is_zero()) return {UniPoly(), UniPoly()};
    Rational inv = r0.lc().inverse();
    return {inv * r0, inv * s0};
}

/// Yun's squarefree decomposition: monic pairwise-coprime squarefree factors
/// with multiplicities; the product over factor^mult times the content of a
/// reconstructs a.  Degree-zero levels are skipped.
inline std::vector<std::pair<UniPoly, int>> squarefree_decompose(const UniPoly& a) {
    if (a.is_zero()) throw error("squarefree decomposition of zero");
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly p = a.monic();
    if (p.degree() == 0) return out;
    UniPoly dp = p.derivative();
    UniPoly g = poly_gcd(p, dp);
    UniPoly w = p.div_exact(g);
    UniPoly y = dp.div_exact(g);
    int mult = 1;
    while (w.degree() > 0) {
        UniPoly z = y - w.derivative();
        UniPoly f = poly_gcd(w, z);
        if (f.degree() > 0) out.emplace_back(f, mult);
        w = w.div_exact(f);
        y = z.div_exact(f);
        ++mult;
    }
    return out;
}

} // namespace dfc
