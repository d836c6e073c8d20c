#pragma once

#include <utility>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/unipoly.hpp"

namespace dfc {

/// Dense bivariate polynomial over Q, stored as a vector of UniPoly in x
/// indexed by the power of y.  Trailing zero y-coefficients are trimmed,
/// so y_degree() and x_degree() are the true degrees.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<UniPoly> ycoeffs) : c_(std::move(ycoeffs)) { trim(); }

    /// table[i][j] = coefficient of x^i y^j.
    static BiPoly from_xy_table(const std::vector<std::vector<Rational>>& table) {
        size_t ydim = 0;
        for (const auto& row : table) ydim = std::max(ydim, row.size());
        std::vector<UniPoly> cs(ydim);
        for (size_t j = 0; j < ydim; ++j) {
            std::vector<Rational> col(table.size());
            for (size_t i = 0; i < table.size(); ++i)
                col[i] = j < table[i].size() ? table[i][j] : Rational(0);
            cs[j] = UniPoly(std::move(col));
        }
        return BiPoly(std::move(cs));
    }

    int y_degree() const { return static_cast<int>(c_.size()) - 1; }
    int x_degree() const {
        int d = -1;
        for (const auto& p : c_) d = std::max(d, p.degree());
        return d;
    }
    bool is_zero() const { return c_.empty(); }

    const UniPoly& ycoeff(int j) const {
        static const UniPoly zero;
        if (j < 0 || j >= static_cast<int>(c_.size())) return zero;
        return c_[j];
    }
    const UniPoly& lc_y() const {
        if (is_zero()) throw error("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        std::vector<UniPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t j = 0; j < r.size(); ++j) r[j] = a.ycoeff(int(j)) + b.ycoeff(int(j));
        return BiPoly(std::move(r));
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        std::vector<UniPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t j = 0; j < r.size(); ++j) r[j] = a.ycoeff(int(j)) - b.ycoeff(int(j));
        return BiPoly(std::move(r));
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        if (a.is_zero() || b.is_zero()) return BiPoly();
        std::vector<UniPoly> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return BiPoly(std::move(r));
    }
    friend BiPoly operator*(const UniPoly& s, const BiPoly& a) {
        std::vector<UniPoly> r(a.c_.size());
        for (size_t j = 0; j < a.c_.size(); ++j) r[j] = s * a.c_[j];
        return BiPoly(std::move(r));
    }
    BiPoly operator-() const {
        std::vector<UniPoly> r(c_.size());
        for (size_t j = 0; j < c_.size(); ++j) r[j] = -c_[j];
        return BiPoly(std::move(r));
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    BiPoly dx() const {
        std::vector<UniPoly> r(c_.size());
        for (size_t j = 0; j < c_.size(); ++j) r[j] = c_[j].derivative();
        return BiPoly(std::move(r));
    }
    BiPoly dy() const {
        if (c_.size() <= 1) return BiPoly();
        std::vector<UniPoly> r(c_.size() - 1);
        for (size_t j = 1; j < c_.size(); ++j) r[j - 1] = Rational(long(j)) * c_[j];
        return BiPoly(std::move(r));
    }

    BiPoly mul_y_power(int k) const {
        if (is_zero()) return BiPoly();
        std::vector<UniPoly> r(c_.size() + size_t(k));
        for (size_t j = 0; j < c_.size(); ++j) r[j + size_t(k)] = c_[j];
        return BiPoly(std::move(r));
    }

    /// P(x0, y) as a polynomial in y.
    UniPoly eval_x(const Rational& x0) const {
        std::vector<Rational> r(c_.size());
        for (size_t j = 0; j < c_.size(); ++j) r[j] = c_[j].eval(x0);
        return UniPoly(std::move(r));
    }

    /// P(x, y0) as a polynomial in x.
    UniPoly eval_y(const Rational& y0) const {
        UniPoly acc;
        for (int j = y_degree(); j >= 0; --j)
            acc = acc * UniPoly::constant(y0) + c_[j];
        return acc;
    }

    /// Coefficients with respect to x, as polynomials in y.
    std::vector<UniPoly> x_coefficients() const {
        int dx = x_degree();
        std::vector<std::vector<Rational>> rows(size_t(std::max(dx, -1) + 1));
        for (auto& row : rows) row.resize(c_.size());
        for (size_t j = 0; j < c_.size(); ++j)
            for (int i = 0; i <= c_[j].degree(); ++i)
                rows[size_t(i)][j] = c_[j].coeff(i);
        std::vector<UniPoly> out;
        out.reserve(rows.size());
        for (auto& row : rows) out.emplace_back(std::move(row));
        return out;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[j].str() + ")";
            if (j > 0) s += "*y" + (j > 1 ? "^" + std::to_string(j) : std::string());
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<UniPoly> c_;
};

/// One pseudo-remainder step of Q by P with respect to y:
/// returns lc_y(P)*Q - lc_y(Q)*y^(deg_y Q - deg_y P)*P, which drops the
/// y-degree by at least one and satisfies Qtilde(x, g) = lc_y(P)(x)*Q(x, g)
/// for every root g of P.
inline BiPoly pseudo_reduce_step(const BiPoly& Q, const BiPoly& P) {
    if (Q.y_degree() < P.y_degree())
        throw error("pseudo_reduce_step: deg_y(Q) < deg_y(P)");
    BiPoly r = P.lc_y() * Q - (Q.lc_y() * P).mul_y_power(Q.y_degree() - P.y_degree());
    if (!r.is_zero() && r.y_degree() > Q.y_degree() - 1)
        throw internal_error("pseudo_reduce_step did not drop the y-degree");
    return r;
}

/// Repeated pseudo-reduction until deg_y < deg_y(P).  Returns (R, k) with
/// lc_y(P)^k * Q = R modulo P and k <= max(0, deg_y Q - deg_y P + 1).
inline std::pair<BiPoly, int> full_reduce(const BiPoly& Q, const BiPoly& P) {
    if (P.y_degree() < 1) throw error("full_reduce: deg_y(P) < 1");
    BiPoly r = Q;
    int k = 0;
    while (!r.is_zero() && r.y_degree() >= P.y_degree()) {
        r = pseudo_reduce_step(r, P);
        ++k;
    }
    return {r, k};
}

/// Determinant of a square matrix of UniPoly via fraction-free (Bareiss)
/// elimination; all divisions are exact.
inline UniPoly unipoly_matrix_det(std::vector<std::vector<UniPoly>> m) {
    size_t n = m.size();
    if (n == 0) return UniPoly::constant(1);
    UniPoly prev = UniPoly::constant(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return UniPoly();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).div_exact(prev);
            m[i][k] = UniPoly();
        }
        prev = m[k][k];
    }
    return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Sylvester matrix of P and Q with respect to y, in the classical layout:
/// deg_y(Q) rows of shifted P coefficients over deg_y(P) rows of shifted Q
/// coefficients, columns ordered from y^(m+n-1) down to y^0.
inline std::vector<std::vector<UniPoly>> sylvester_y(const BiPoly& P, const BiPoly& Q) {
    int m = P.y_degree(), n = Q.y_degree();
    if (m < 0 || n < 0) throw error("sylvester matrix of zero polynomial");
    size_t N = size_t(m + n);
    std::vector<std::vector<UniPoly>> s(N, std::vector<UniPoly>(N));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s[size_t(i)][size_t(i + j)] = P.ycoeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s[size_t(n + i)][size_t(i + j)] = Q.ycoeff(n - j);
    return s;
}

/// Resultant with respect to y as the determinant of the Sylvester matrix.
/// For constant Q = c (and P of y-degree m) this is c^m by convention.
inline UniPoly resultant_y(const BiPoly& P, const BiPoly& Q) {
    if (P.is_zero() && Q.is_zero()) throw error("resultant of two zero polynomials");
    if (P.is_zero() || Q.is_zero()) return UniPoly();
    return unipoly_matrix_det(sylvester_y(P, Q));
}

/// w = Res_y(P, P_y) / lc_y(P): the discriminant normalization used as a
/// denominator everywhere downstream.  Zero iff P is not squarefree in y.
inline UniPoly discriminant_y(const BiPoly& P) {
    if (P.y_degree() < 1) throw error("discriminant of a constant in y");
    return resultant_y(P, P.dy()).div_exact(P.lc_y());
}

} // namespace dfc
