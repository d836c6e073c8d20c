#pragma once

#include <utility>
#include <vector>

#include "dfc/bipoly.hpp"
#include "dfc/diffop.hpp"
#include "dfc/errors.hpp"
#include "dfc/quotient.hpp"
#include "dfc/unipoly.hpp"

namespace dfc {

/// Truncated formal power series in (x - base) over a coefficient ring R
/// (Rational, or QuotElem with a shared modulus).  trunc_order() = N means
/// the coefficients of (x-base)^0 .. (x-base)^(N-1) are known.
template <typename R>
class TruncSeries {
public:
    TruncSeries(R base, std::vector<R> coeffs)
        : base_(std::move(base)), c_(std::move(coeffs)) {}

    static TruncSeries zero(const R& base, int n) {
        return TruncSeries(base, std::vector<R>(size_t(std::max(n, 0)), ring_zero(base)));
    }

    int trunc_order() const { return int(c_.size()); }
    const R& base() const { return base_; }
    const R& coeff(int k) const {
        if (k < 0 || k >= trunc_order()) throw truncation_error("series coefficient out of range");
        return c_[size_t(k)];
    }
    const std::vector<R>& coeffs() const { return c_; }

    bool is_zero_through(int n) const {
        if (n > trunc_order()) throw truncation_error("series too short for zero test");
        for (int k = 0; k < n; ++k)
            if (!c_[size_t(k)].is_zero()) return false;
        return true;
    }

    /// Index of the first nonzero known coefficient, or trunc_order().
    int valuation_floor() const {
        for (int k = 0; k < trunc_order(); ++k)
            if (!c_[size_t(k)].is_zero()) return k;
        return trunc_order();
    }

    TruncSeries truncate(int n) const {
        if (n >= trunc_order()) return *this;
        return TruncSeries(base_, std::vector<R>(c_.begin(), c_.begin() + n));
    }

private:
    R base_;
    std::vector<R> c_;
};

namespace series {

template <typename R>
void check_compatible(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    if (!(a.base() == b.base())) throw error("series base point mismatch");
}

template <typename R>
TruncSeries<R> add(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    check_compatible(a, b);
    int n = std::min(a.trunc_order(), b.trunc_order());
    std::vector<R> c;
    c.reserve(size_t(n));
    for (int k = 0; k < n; ++k) c.push_back(a.coeff(k) + b.coeff(k));
    return TruncSeries<R>(a.base(), std::move(c));
}

template <typename R>
TruncSeries<R> sub(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    check_compatible(a, b);
    int n = std::min(a.trunc_order(), b.trunc_order());
    std::vector<R> c;
    c.reserve(size_t(n));
    for (int k = 0; k < n; ++k) c.push_back(a.coeff(k) - b.coeff(k));
    return TruncSeries<R>(a.base(), std::move(c));
}

template <typename R>
TruncSeries<R> mul(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    check_compatible(a, b);
    int n = std::min(a.trunc_order(), b.trunc_order());
    std::vector<R> c(size_t(n), ring_zero(a.base()));
    for (int i = 0; i < n; ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (int j = 0; i + j < n; ++j) {
            if (b.coeff(j).is_zero()) continue;
            c[size_t(i + j)] = c[size_t(i + j)] + a.coeff(i) * b.coeff(j);
        }
    }
    return TruncSeries<R>(a.base(), std::move(c));
}

template <typename R>
TruncSeries<R> scale(const R& s, const TruncSeries<R>& a) {
    std::vector<R> c;
    c.reserve(a.coeffs().size());
    for (const auto& x : a.coeffs()) c.push_back(s * x);
    return TruncSeries<R>(a.base(), std::move(c));
}

template <typename R>
TruncSeries<R> derive(const TruncSeries<R>& a) {
    int n = a.trunc_order() - 1;
    if (n < 0) throw truncation_error("cannot differentiate an empty truncation");
    std::vector<R> c;
    c.reserve(size_t(n));
    for (int k = 1; k <= n; ++k)
        c.push_back(ring_from_rational(a.base(), Rational(long(k))) * a.coeff(k));
    return TruncSeries<R>(a.base(), std::move(c));
}

/// Multiplicative inverse; the constant term must be invertible in R.
template <typename R>
TruncSeries<R> invert(const TruncSeries<R>& a) {
    if (a.trunc_order() == 0) throw truncation_error("inverting an empty truncation");
    R c0inv = ring_inverse(a.coeff(0));
    int n = a.trunc_order();
    std::vector<R> c(size_t(n), ring_zero(a.base()));
    c[0] = c0inv;
    for (int k = 1; k < n; ++k) {
        R acc = ring_zero(a.base());
        for (int j = 1; j <= k; ++j) acc = acc + a.coeff(j) * c[size_t(k - j)];
        c[size_t(k)] = -(c0inv * acc);
    }
    return TruncSeries<R>(a.base(), std::move(c));
}

/// Polynomial p re-expanded at the series base point, truncated to n terms.
template <typename R>
TruncSeries<R> from_poly(const UniPoly& p, const R& base, int n) {
    std::vector<R> sh = p.shifted_coeffs(base);
    sh.resize(size_t(std::max(n, 0)), ring_zero(base));
    if (int(sh.size()) > n) sh.resize(size_t(std::max(n, 0)));
    return TruncSeries<R>(base, std::move(sh));
}

} // namespace series

/// Composition f(g) for f expanded at beta = g(base): Horner evaluation of
/// f at (g - beta), valid because g - beta has positive valuation.
template <typename R>
TruncSeries<R> series_compose(const TruncSeries<R>& f, const TruncSeries<R>& g) {
    if (g.trunc_order() == 0 || !(f.base() == g.coeff(0)))
        throw error("series_compose: base point of f must equal the constant term of g");
    int n = std::min(f.trunc_order(), g.trunc_order());
    std::vector<R> hc(g.coeffs().begin(), g.coeffs().begin() + n);
    if (!hc.empty()) hc[0] = ring_zero(g.base());
    TruncSeries<R> h(g.base(), std::move(hc));
    TruncSeries<R> acc = TruncSeries<R>::zero(g.base(), n);
    for (int m = f.trunc_order() - 1; m >= 0; --m) {
        acc = series::mul(acc, h);
        std::vector<R> cs = acc.coeffs();
        if (!cs.empty()) cs[0] = cs[0] + f.coeff(m);
        else if (n > 0) cs.push_back(f.coeff(m));
        acc = TruncSeries<R>(g.base(), std::move(cs));
    }
    return acc;
}

/// Applies an operator to a series: sum_j a_j (x) f^(j), truncated to
/// trunc_order(f) - order(A) since each differentiation loses a term.
template <typename R>
TruncSeries<R> op_apply(const DiffOp& a, const TruncSeries<R>& f) {
    if (a.is_zero()) return TruncSeries<R>::zero(f.base(), f.trunc_order());
    if (f.trunc_order() < a.order())
        throw truncation_error("series truncation shorter than operator order");
    int n = f.trunc_order() - a.order();
    TruncSeries<R> acc = TruncSeries<R>::zero(f.base(), n);
    TruncSeries<R> der = f;
    for (int j = 0; j <= a.order(); ++j) {
        if (!a.coeff(j).is_zero()) {
            TruncSeries<R> cj = series::from_poly(a.coeff(j), f.base(), n);
            acc = series::add(acc, series::mul(cj, der.truncate(n)));
        }
        if (j < a.order()) der = series::derive(der);
    }
    return acc;
}

namespace detail {

/// P(x, y) evaluated at x = base + s (series) and y = g, via Horner in y.
template <typename R>
TruncSeries<R> bipoly_eval_series(const BiPoly& P, const TruncSeries<R>& g) {
    int n = g.trunc_order();
    TruncSeries<R> acc = TruncSeries<R>::zero(g.base(), n);
    for (int j = P.y_degree(); j >= 0; --j) {
        acc = series::mul(acc, g);
        acc = series::add(acc, series::from_poly(P.ycoeff(j), g.base(), n));
    }
    return acc;
}

} // namespace detail

/// Newton lift of the branch of P through (alpha, y0): returns g with
/// g(alpha) = y0 and P(x, g) = 0 mod (x - alpha)^N.  Requires P_y(alpha, y0)
/// invertible; quadratic convergence, precision doubling per step.
template <typename R>
TruncSeries<R> branch_lift(const BiPoly& P, const R& alpha, const R& y0, int N) {
    if (N < 1) throw error("branch_lift needs N >= 1");
    BiPoly Py = P.dy();
    // precondition checks at the point itself
    {
        TruncSeries<R> pt(alpha, std::vector<R>{y0});
        if (!detail::bipoly_eval_series(P, pt).coeff(0).is_zero())
            throw singular_point_error("branch_lift: (alpha, y0) is not on the curve");
        R d = detail::bipoly_eval_series(Py, pt).coeff(0);
        if (classify(d) != elem_kind::unit) {
            if (classify(d) == elem_kind::zero)
                throw singular_point_error("singular branch: P_y vanishes at the seed");
            throw_zero_divisor(d);
        }
    }
    int prec = 1;
    TruncSeries<R> g(alpha, std::vector<R>{y0});
    while (prec < N) {
        prec = std::min(2 * prec, N);
        // re-extend current approximation with zero coefficients
        std::vector<R> cs = g.coeffs();
        cs.resize(size_t(prec), ring_zero(alpha));
        g = TruncSeries<R>(alpha, std::move(cs));
        TruncSeries<R> val = detail::bipoly_eval_series(P, g);
        TruncSeries<R> dval = detail::bipoly_eval_series(Py, g);
        g = series::sub(g, series::mul(val, series::invert(dval)));
    }
    if (!detail::bipoly_eval_series(P, g).is_zero_through(N))
        throw internal_error("branch_lift: Newton iteration failed to verify");
    return g;
}

// QuotElem-only specialization hook: classify() on Rational never reports
// zero_divisor, so the generic code above also covers R = Rational.

/// All branches of P at a rational point alpha, tracked simultaneously as
/// one generic branch over K = Q[t]/(m) where m is the monic image of
/// P(alpha, .), with constant term t.  Requires P(alpha, .) squarefree of
/// degree deg_y(P).
inline TruncSeries<QuotElem> all_branches(const BiPoly& P, const Rational& alpha, int N) {
    UniPoly palpha = P.eval_x(alpha);
    if (palpha.degree() != P.y_degree())
        throw singular_point_error("branch point: leading coefficient of P vanishes at alpha");
    if (poly_gcd(palpha, palpha.derivative()).degree() != 0)
        throw singular_point_error("branch point: P(alpha, .) is not squarefree");
    auto mod = QuotElem::make_modulus(palpha);
    QuotElem t = QuotElem::generator(mod);
    QuotElem a = QuotElem::from_rational(mod, alpha);
    return branch_lift(P, a, t, N);
}

/// Canonical local solution basis of L at an ordinary point beta:
/// f_i = (x-beta)^(i-1) + O((x-beta)^(r)), computed with the triangular
/// coefficient recurrence.  Needs lc(L)(beta) invertible.
template <typename R>
std::vector<TruncSeries<R>> local_solution_basis(const DiffOp& L, const R& beta, int N) {
    if (L.is_zero() || L.order() < 1) throw error("local basis needs an operator of order >= 1");
    int r = L.order();
    // shifted coefficient tables: A[k][m] = coeff of s^m in l_k(beta + s)
    std::vector<std::vector<R>> A;
    A.reserve(size_t(r + 1));
    for (int k = 0; k <= r; ++k) A.push_back(L.coeff(k).shifted_coeffs(beta));
    {
        elem_kind ek = classify(A[size_t(r)][0]);
        if (ek == elem_kind::zero)
            throw singular_point_error("singular expansion point: lc(L) vanishes at beta");
        if (ek == elem_kind::zero_divisor) throw_zero_divisor(A[size_t(r)][0]);
    }
    R lcinv = ring_inverse(A[size_t(r)][0]);
    auto fall = [](long a, int k) {
        Rational f(1);
        for (int i = 0; i < k; ++i) f = f * Rational(a - i);
        return f;
    };
    std::vector<TruncSeries<R>> basis;
    basis.reserve(size_t(r));
    for (int i = 1; i <= r; ++i) {
        std::vector<R> f(size_t(std::max(N, 0)), ring_zero(beta));
        if (i - 1 < N) f[size_t(i - 1)] = ring_from_rational(beta, Rational(1));
        for (int n = 0; n + r < N; ++n) {
            R acc = ring_zero(beta);
            for (int k = 0; k <= r; ++k) {
                for (size_t m = 0; m < A[size_t(k)].size(); ++m) {
                    if (k == r && m == 0) continue;
                    int idx = n - int(m) + k;
                    if (idx < 0 || idx >= n + r) continue;
                    Rational c = fall(idx, k);
                    if (c.is_zero() || A[size_t(k)][m].is_zero()) continue;
                    acc = acc + ring_from_rational(beta, c) * A[size_t(k)][m] * f[size_t(idx)];
                }
            }
            Rational topfall = fall(n + r, r);
            f[size_t(n + r)] = -(ring_from_rational(beta, topfall.inverse()) * lcinv * acc);
        }
        basis.emplace_back(beta, std::move(f));
    }
    return basis;
}

} // namespace dfc
