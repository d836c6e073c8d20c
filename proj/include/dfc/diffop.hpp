#pragma once

#include <utility>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/ratfunc.hpp"
#include "dfc/unipoly.hpp"

namespace dfc {

/// Element of the Ore algebra Q[x][d/dx]: polynomial coefficients indexed
/// by the power of the derivation, multiplication governed by Dx = xD + 1.
/// Canonical form: the leading coefficient is nonzero (order() is exact).
class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(std::vector<UniPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

    static DiffOp zero() { return DiffOp(); }
    static DiffOp one() { return DiffOp({UniPoly::constant(1)}); }
    /// c(x) * D^k
    static DiffOp term(UniPoly c, int k) {
        std::vector<UniPoly> cs(size_t(k) + 1);
        cs[size_t(k)] = std::move(c);
        return DiffOp(std::move(cs));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    int x_degree() const {
        int d = -1;
        for (const auto& p : c_) d = std::max(d, p.degree());
        return d;
    }

    const UniPoly& coeff(int k) const {
        static const UniPoly zero;
        if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
        return c_[k];
    }
    const UniPoly& lc() const {
        if (is_zero()) throw error("leading coefficient of zero operator");
        return c_.back();
    }
    const std::vector<UniPoly>& coeffs() const { return c_; }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
        std::vector<UniPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(int(k)) + b.coeff(int(k));
        return DiffOp(std::move(r));
    }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) {
        std::vector<UniPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(int(k)) - b.coeff(int(k));
        return DiffOp(std::move(r));
    }
    DiffOp operator-() const {
        std::vector<UniPoly> r(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) r[k] = -c_[k];
        return DiffOp(std::move(r));
    }
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.c_ == b.c_; }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = order(); k >= 0; --k) {
            if (c_[size_t(k)].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[size_t(k)].str() + ")";
            if (k >= 1) s += "*D" + (k > 1 ? "^" + std::to_string(k) : std::string());
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<UniPoly> c_;
};

/// Operator with rational-function coefficients, represented as a
/// polynomial-coefficient numerator over a single denominator, with no
/// common polynomial factor between them.
class RatDiffOp {
public:
    RatDiffOp() : den_(UniPoly::constant(1)) {}
    RatDiffOp(DiffOp num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw error("operator with zero denominator");
        normalize();
    }
    explicit RatDiffOp(DiffOp num) : num_(std::move(num)), den_(UniPoly::constant(1)) {}

    const DiffOp& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int order() const { return num_.order(); }

    RatFunc coeff(int k) const { return RatFunc(num_.coeff(k), den_); }

    friend bool operator==(const RatDiffOp& a, const RatDiffOp& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatDiffOp& a, const RatDiffOp& b) { return !(a == b); }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = UniPoly::constant(1);
            return;
        }
        UniPoly g = den_;
        for (const auto& p : num_.coeffs())
            if (!p.is_zero()) g = poly_gcd(g, p);
        if (g.degree() > 0) {
            std::vector<UniPoly> nc;
            nc.reserve(num_.coeffs().size());
            for (const auto& p : num_.coeffs()) nc.push_back(p.is_zero() ? p : p.div_exact(g));
            num_ = DiffOp(std::move(nc));
            den_ = den_.div_exact(g);
        }
        Rational lc = den_.lc();
        if (!lc.is_one()) {
            Rational inv = lc.inverse();
            std::vector<UniPoly> nc;
            nc.reserve(num_.coeffs().size());
            for (const auto& p : num_.coeffs()) nc.push_back(inv * p);
            num_ = DiffOp(std::move(nc));
            den_ = inv * den_;
        }
    }
    DiffOp num_;
    UniPoly den_;
};

namespace detail {

/// Work representation for rational-coefficient operator arithmetic.
using OreRat = std::vector<RatFunc>; // index = power of D

inline OreRat to_orerat(const RatDiffOp& a) {
    OreRat v(size_t(a.order() + 1));
    for (int k = 0; k <= a.order(); ++k) v[size_t(k)] = a.coeff(k);
    return v;
}

inline RatDiffOp from_orerat(const OreRat& v) {
    // common denominator = product of distinct denominators via lcm
    UniPoly den = UniPoly::constant(1);
    for (const auto& r : v) {
        if (r.is_zero()) continue;
        UniPoly g = poly_gcd(den, r.den());
        den = den.div_exact(g) * r.den();
    }
    std::vector<UniPoly> num(v.size());
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        num[k] = v[k].num() * den.div_exact(v[k].den());
    }
    return RatDiffOp(DiffOp(std::move(num)), std::move(den));
}

/// (r(x) D^i) * (s(x) D^j) expanded by Leibniz:
/// D^i s = sum_k C(i,k) s^(k) D^(i-k).
inline void accumulate_product_term(OreRat& acc, const RatFunc& r, int i, const RatFunc& s, int j) {
    RatFunc sder = s;
    Rational binom(1);
    for (int k = 0; k <= i; ++k) {
        if (k > 0) {
            sder = sder.derivative();
            binom = binom * Rational(i - k + 1) / Rational(k);
        }
        size_t idx = size_t(i - k + j);
        if (acc.size() <= idx) acc.resize(idx + 1);
        acc[idx] = acc[idx] + RatFunc(binom) * r * sder;
    }
}

inline OreRat orerat_mul(const OreRat& a, const OreRat& b) {
    OreRat acc;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            accumulate_product_term(acc, a[i], int(i), b[j], int(j));
        }
    }
    return acc;
}

} // namespace detail

/// Non-commutative product in Q[x][D].
inline DiffOp op_mul(const DiffOp& a, const DiffOp& b) {
    if (a.is_zero() || b.is_zero()) return DiffOp();
    detail::OreRat av = detail::to_orerat(RatDiffOp(a));
    detail::OreRat bv = detail::to_orerat(RatDiffOp(b));
    RatDiffOp prod = detail::from_orerat(detail::orerat_mul(av, bv));
    if (prod.den().degree() != 0) throw internal_error("polynomial product has denominator");
    std::vector<UniPoly> cs(size_t(prod.order() + 1));
    for (int k = 0; k <= prod.order(); ++k) cs[size_t(k)] = prod.coeff(k).as_polynomial();
    return DiffOp(std::move(cs));
}

inline RatDiffOp op_mul(const RatDiffOp& a, const RatDiffOp& b) {
    return detail::from_orerat(detail::orerat_mul(detail::to_orerat(a), detail::to_orerat(b)));
}

/// Right division: a = q*b + r with order(r) < order(b), coefficients in
/// Q(x).  The identity q*b + r = a is exact.
inline std::pair<RatDiffOp, RatDiffOp> right_divide(const RatDiffOp& a, const DiffOp& b) {
    if (b.is_zero()) throw error("right division by zero operator");
    detail::OreRat rem = detail::to_orerat(a);
    detail::OreRat bv = detail::to_orerat(RatDiffOp(b));
    detail::OreRat quot;
    RatFunc blc = bv.back();
    int ob = b.order();
    auto order_of = [](const detail::OreRat& v) {
        int o = int(v.size()) - 1;
        while (o >= 0 && v[size_t(o)].is_zero()) --o;
        return o;
    };
    int oa = order_of(rem);
    while (oa >= ob) {
        RatFunc f = rem[size_t(oa)] / blc;
        int shift = oa - ob;
        if (quot.size() <= size_t(shift)) quot.resize(size_t(shift) + 1);
        quot[size_t(shift)] = quot[size_t(shift)] + f;
        detail::OreRat sub;
        detail::accumulate_product_term(sub, f, shift, RatFunc(Rational(1)), 0);
        // rem -= (f D^shift) * b
        detail::OreRat prod = detail::orerat_mul(sub, bv);
        if (rem.size() < prod.size()) rem.resize(prod.size());
        for (size_t k = 0; k < prod.size(); ++k) rem[k] = rem[k] - prod[k];
        int noa = order_of(rem);
        if (noa >= oa) throw internal_error("right division failed to reduce order");
        oa = noa;
    }
    return {detail::from_orerat(quot), detail::from_orerat(rem)};
}

inline std::pair<RatDiffOp, RatDiffOp> right_divide(const DiffOp& a, const DiffOp& b) {
    return right_divide(RatDiffOp(a), b);
}

/// Clears denominators, removes polynomial and rational content, and makes
/// the leading rational of the leading coefficient positive.  The result is
/// the canonical representative of the C(x)-associate class.
inline DiffOp primitive_normalize(const RatDiffOp& a) {
    if (a.is_zero()) throw error("normalizing the zero operator");
    UniPoly g;
    bool first = true;
    for (const auto& p : a.num().coeffs()) {
        if (p.is_zero()) continue;
        g = first ? p : poly_gcd(g, p);
        first = false;
    }
    std::vector<UniPoly> cs(a.num().coeffs().size());
    for (size_t k = 0; k < cs.size(); ++k) {
        const UniPoly& p = a.num().coeff(int(k));
        cs[k] = p.is_zero() ? p : p.div_exact(g.monic());
    }
    DiffOp op(std::move(cs));
    // rational content: gcd of all coefficient contents
    Rational content(0);
    for (const auto& p : op.coeffs()) {
        if (p.is_zero()) continue;
        Rational c = dfc::abs(p.content());
        if (content.is_zero()) content = c;
        else {
            Integer gn, gl;
            mpz_gcd(gn.get_mpz_t(), content.num().get_mpz_t(), c.num().get_mpz_t());
            mpz_lcm(gl.get_mpz_t(), content.den().get_mpz_t(), c.den().get_mpz_t());
            content = Rational(gn, gl);
        }
    }
    if (op.lc().lc().sign() < 0) content = -content;
    Rational inv = content.inverse();
    std::vector<UniPoly> out(op.coeffs().size());
    for (size_t k = 0; k < out.size(); ++k) out[k] = inv * op.coeff(int(k));
    return DiffOp(std::move(out));
}

inline DiffOp primitive_normalize(const DiffOp& a) {
    return primitive_normalize(RatDiffOp(a));
}

} // namespace dfc
