#pragma once

#include <cstdio>
#include <optional>
#include <utility>
#include <vector>

#include "dfc/bipoly.hpp"
#include "dfc/bounds.hpp"
#include "dfc/diffop.hpp"
#include "dfc/errors.hpp"
#include "dfc/matrix.hpp"
#include "dfc/modular.hpp"
#include "dfc/oracle.hpp"
#include "dfc/ratfunc.hpp"
#include "dfc/unipoly.hpp"

namespace dfc {

namespace detail {

/// l(y) for l in Q[x]: the same coefficients read as a polynomial in y.
inline BiPoly ypoly(const UniPoly& l) {
    std::vector<UniPoly> cs(size_t(l.degree() + 1));
    for (int j = 0; j <= l.degree(); ++j) cs[size_t(j)] = UniPoly::constant(l.coeff(j));
    return BiPoly(std::move(cs));
}

/// Gauss-Jordan solve of a square system over Q(x) with several right-hand
/// sides; throws if the matrix is singular.
inline std::vector<std::vector<RatFunc>> solve_square(std::vector<std::vector<RatFunc>> m,
                                                      std::vector<std::vector<RatFunc>> rhs) {
    size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw internal_error("solve_square: non-square matrix");
    size_t k = rhs.size();  // number of right-hand sides, each of length n
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw internal_error("solve_square: singular system");
        if (piv != col) {
            std::swap(m[piv], m[col]);
            for (size_t s = 0; s < k; ++s) std::swap(rhs[s][piv], rhs[s][col]);
        }
        RatFunc inv = RatFunc(Rational(1)) / m[col][col];
        for (size_t j = col; j < n; ++j) m[col][j] = m[col][j] * inv;
        for (size_t s = 0; s < k; ++s) rhs[s][col] = rhs[s][col] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            RatFunc f = m[i][col];
            for (size_t j = col; j < n; ++j) m[i][j] = m[i][j] - f * m[col][j];
            for (size_t s = 0; s < k; ++s) rhs[s][i] = rhs[s][i] - f * rhs[s][col];
        }
    }
    return rhs;
}

} // namespace detail

/// Everything precomputed for one validated (L, P) pair: the Sylvester
/// determinant v, the discriminant w, the master denominator u, the
/// top-derivative rewriting table, and the two multiplication tables that
/// drive the derivative recursion.
struct CompositionContext {
    DiffOp L;
    BiPoly P;
    UniPoly lcP;
    UniPoly v;                 // det Syl_y(P, lc(L)(y))
    UniPoly w;                 // Res_y(P, P_y); the lcP-multiple of the discriminant
                               // (the plain discriminant under-counts the g'-rewrite
                               // denominator whenever lc_y(P) is not constant)
    UniPoly u;                 // v * w * lcP^(r_P + pad)
    UniPoly uhat;              // v * lcP^(r_P - 1 + pad): scales (w lcP)-terms to u
    int pad = 0;               // extra lcP power when some l_k needed pre-reduction
    int step_degree = 0;       // per-step degree growth of the recursion numerators
    /// top_rewrite[j][k]: f^(r_L) o g = 1/(v lcP^pad) sum q[j][k] g^j (f^(k) o g)
    std::vector<std::vector<UniPoly>> top_rewrite;

    // derivative-recursion tables
    std::vector<std::vector<UniPoly>> gprime_pow;  // [i][a]: g' g^i over (w lcP)
    std::vector<std::vector<std::vector<UniPoly>>> top_gprime;  // [i][b][a] over u

    int r_L() const { return L.order(); }
    int d_L() const { return L.x_degree(); }
    int r_P() const { return P.y_degree(); }
    int d_P() const { return P.x_degree(); }
    ProblemShape shape() const { return ProblemShape{r_L(), d_L(), r_P(), d_P()}; }
};

/// Rewrites g' * Q(x, g) in the basis 1, g, ..., g^(r_P - 1):
/// returns q with g' Q(x,g) = (1/(w lcP)) sum_a q_a(x) g^a, and
/// deg q_a <= deg_x(Q) + 2 r_P d_P.
inline BiPoly multiply_by_gprime(const CompositionContext& ctx, const BiPoly& Q) {
    int rp = ctx.r_P();
    if (Q.y_degree() >= rp) throw error("multiply_by_gprime: deg_y(Q) must be < r_P");
    if (Q.is_zero()) return BiPoly();
    BiPoly N = -(Q * ctx.P.dx());
    if (!N.is_zero() && N.y_degree() > 2 * rp - 2) {
        N = pseudo_reduce_step(N, ctx.P);
        if (!N.is_zero() && N.y_degree() > 2 * rp - 2)
            throw internal_error("g'-rewrite: reduction left the y-degree too high");
    } else {
        N = ctx.lcP * N;
    }
    // solve A P + B P_y = N with deg_y A <= r_P - 2, deg_y B <= r_P - 1
    size_t dim = size_t(2 * rp - 1);
    std::vector<std::vector<RatFunc>> m(dim, std::vector<RatFunc>(dim));
    BiPoly Py = ctx.P.dy();
    for (int i = 0; i <= rp - 2; ++i)        // columns of y^i * P
        for (int j = 0; j <= ctx.P.y_degree(); ++j)
            m[size_t(i + j)][size_t(i)] = RatFunc(ctx.P.ycoeff(j));
    for (int i = 0; i <= rp - 1; ++i)        // columns of y^i * P_y
        for (int j = 0; j <= Py.y_degree(); ++j)
            m[size_t(i + j)][size_t(rp - 1 + i)] = RatFunc(Py.ycoeff(j));
    std::vector<std::vector<RatFunc>> rhs(1, std::vector<RatFunc>(dim));
    for (int t = 0; t < int(dim); ++t) rhs[0][size_t(t)] = RatFunc(N.ycoeff(t));
    auto sol = detail::solve_square(std::move(m), std::move(rhs));
    std::vector<UniPoly> q(static_cast<size_t>(rp));
    int degcap = std::max(Q.x_degree(), 0) + 2 * rp * ctx.d_P();
    for (int a = 0; a < rp; ++a) {
        RatFunc qa = RatFunc(ctx.w) * sol[0][size_t(rp - 1 + a)];
        q[size_t(a)] = qa.as_polynomial();
        if (q[size_t(a)].degree() > degcap)
            throw internal_error("g'-rewrite exceeded its degree certificate");
    }
    return BiPoly(std::move(q));
}

namespace detail {

/// Builds v and the top-derivative rewrite table of the context.  Each l_k
/// whose y-degree does not fit the Sylvester system of (P, lc(L)(y)) is
/// pre-reduced by P, contributing a power of lcP to the denominator.
inline void build_top_rewrite(CompositionContext& ctx) {
    int rp = ctx.r_P(), rl = ctx.r_L();
    const UniPoly& lc = ctx.L.lc();
    BiPoly lhat = ypoly(lc);
    int e = lhat.y_degree();
    ctx.v = resultant_y(ctx.P, lhat);
    if (ctx.v.is_zero())
        throw validation_error(validation_error::kind::leading_coeff_clash,
                               "gcd(P(x,y), lc(L)(y)) is nontrivial over C(x)");
    // reduce oversized right-hand sides first
    std::vector<BiPoly> rhs_poly(static_cast<size_t>(rl));
    std::vector<int> kappa(size_t(rl), 0);
    int pad = 0;
    for (int k = 0; k < rl; ++k) {
        BiPoly lk = ypoly(ctx.L.coeff(k));
        if (lk.y_degree() <= rp + e - 1) {
            rhs_poly[size_t(k)] = lk;
        } else {
            auto [red, steps] = full_reduce(lk, ctx.P);
            rhs_poly[size_t(k)] = red;
            kappa[size_t(k)] = steps;
            pad = std::max(pad, steps);
        }
    }
    ctx.pad = pad;
    // Sylvester system of (P, lhat): columns y^i P (i < e), y^j lhat (j < rp)
    size_t dim = size_t(rp + e);
    std::vector<std::vector<RatFunc>> m(dim, std::vector<RatFunc>(dim));
    for (int i = 0; i < e; ++i)
        for (int j = 0; j <= rp; ++j)
            m[size_t(i + j)][size_t(i)] = RatFunc(ctx.P.ycoeff(j));
    for (int i = 0; i < rp; ++i)
        for (int j = 0; j <= e; ++j)
            m[size_t(i + j)][size_t(e + i)] = RatFunc(lhat.ycoeff(j));
    std::vector<std::vector<RatFunc>> rhs(static_cast<size_t>(rl), std::vector<RatFunc>(dim));
    for (int k = 0; k < rl; ++k)
        for (int t = 0; t < int(dim); ++t)
            rhs[size_t(k)][size_t(t)] = RatFunc(rhs_poly[size_t(k)].ycoeff(t));
    auto sol = solve_square(std::move(m), std::move(rhs));
    // q[j][k] = -v * lcP^(pad - kappa_k) * B_k[j]
    ctx.top_rewrite.assign(size_t(rp), std::vector<UniPoly>(size_t(rl)));
    int degcap = (ctx.d_L() + pad) * ctx.d_P();
    for (int k = 0; k < rl; ++k) {
        UniPoly scale = ctx.v;
        for (int t = kappa[size_t(k)]; t < pad; ++t) scale = scale * ctx.lcP;
        for (int j = 0; j < rp; ++j) {
            RatFunc q = -(RatFunc(scale) * sol[size_t(k)][size_t(e + j)]);
            ctx.top_rewrite[size_t(j)][size_t(k)] = q.as_polynomial();
            if (ctx.top_rewrite[size_t(j)][size_t(k)].degree() > degcap)
                throw internal_error("top-derivative rewrite exceeded its degree certificate");
        }
    }
}

inline void build_recursion_tables(CompositionContext& ctx) {
    int rp = ctx.r_P(), rl = ctx.r_L();
    ctx.gprime_pow.resize(size_t(rp));
    for (int i = 0; i < rp; ++i) {
        BiPoly yi = BiPoly({UniPoly::constant(Rational(1))}).mul_y_power(i);
        BiPoly q = multiply_by_gprime(ctx, yi);
        ctx.gprime_pow[size_t(i)].assign(size_t(rp), UniPoly());
        for (int a = 0; a < rp; ++a) ctx.gprime_pow[size_t(i)][size_t(a)] = q.ycoeff(a);
    }
    // top_gprime[i][b][a]: g' g^i (f^(r_L) o g) = (1/u) sum TOPG g^a (f^(b) o g)
    ctx.top_gprime.resize(size_t(rp));
    for (int i = 0; i < rp; ++i) {
        ctx.top_gprime[size_t(i)].assign(size_t(rl), std::vector<UniPoly>(size_t(rp)));
        for (int b = 0; b < rl; ++b) {
            // W(y) = sum_j q[j][b] y^(j+i), then reduce below r_P and pad
            std::vector<UniPoly> wc(size_t(rp + i));
            for (int j = 0; j < rp; ++j) wc[size_t(j + i)] = ctx.top_rewrite[size_t(j)][size_t(b)];
            BiPoly W(std::move(wc));
            int steps = 0;
            if (!W.is_zero()) {
                auto [red, k] = full_reduce(W, ctx.P);
                W = red;
                steps = k;
            }
            for (int t = steps; t < rp - 1; ++t) W = ctx.lcP * W;
            if (steps > rp - 1)
                throw internal_error("top-derivative table needed too many reduction steps");
            BiPoly q = multiply_by_gprime(ctx, W);
            for (int a = 0; a < rp; ++a)
                ctx.top_gprime[size_t(i)][size_t(b)][size_t(a)] = q.ycoeff(a);
        }
    }
}

} // namespace detail

/// Validates the standing assumptions on (L, P) and precomputes the
/// rewriting data: (a) P squarefree over C(x), (b) no divisor in Cbar[y],
/// (c) lc(L)(y) coprime to P; then v, w, u and the recursion tables.
inline CompositionContext validate_inputs(const DiffOp& L, const BiPoly& P) {
    if (L.is_zero() || L.order() < 1)
        throw validation_error(validation_error::kind::bad_shape, "operator must have order >= 1");
    if (P.y_degree() < 1)
        throw validation_error(validation_error::kind::bad_shape, "P must have positive y-degree");
    CompositionContext ctx;
    ctx.L = L;
    ctx.P = P;
    ctx.lcP = P.lc_y();
    ctx.w = resultant_y(P, P.dy());
    if (ctx.w.is_zero())
        throw validation_error(validation_error::kind::not_squarefree,
                               "P is not squarefree as an element of C(x)[y]");
    detail::build_top_rewrite(ctx);
    {
        auto xc = P.x_coefficients();
        UniPoly g;
        for (const auto& c : xc) g = poly_gcd(g, c);
        if (g.degree() != 0)
            throw validation_error(validation_error::kind::constant_field_divisor,
                                   "P has a divisor in Cbar[y]");
    }
    ctx.u = ctx.v * ctx.w;
    for (int t = 0; t < ctx.r_P() + ctx.pad; ++t) ctx.u = ctx.u * ctx.lcP;
    if (ctx.u.is_zero()) throw internal_error("master denominator vanished");
    if (ctx.u.degree() > (3 * ctx.r_P() + ctx.d_L() - 1 + ctx.pad) * ctx.d_P())
        throw internal_error("master denominator exceeded its degree certificate");
    detail::build_recursion_tables(ctx);
    ctx.uhat = ctx.v;
    for (int t = 0; t < ctx.r_P() - 1 + ctx.pad; ++t) ctx.uhat = ctx.uhat * ctx.lcP;
    // per-step growth of the expansion numerators; equals deg(u) for generic
    // inputs, but degenerate resultants can make the tables slightly larger
    ctx.step_degree = std::max(ctx.u.degree(), 0);
    for (const auto& row : ctx.gprime_pow)
        for (const auto& q : row)
            ctx.step_degree = std::max(ctx.step_degree, ctx.uhat.degree() + q.degree());
    for (const auto& plane : ctx.top_gprime)
        for (const auto& row : plane)
            for (const auto& q : row) ctx.step_degree = std::max(ctx.step_degree, q.degree());
    return ctx;
}

/// Observation-2 interface: the Sylvester determinant and the
/// top-derivative rewrite table of the context.
inline std::pair<UniPoly, std::vector<std::vector<UniPoly>>> rewrite_top_derivative(
    const CompositionContext& ctx) {
    return {ctx.v, ctx.top_rewrite};
}

/// Numerator table of the expansion D^level (f o g) =
/// (1/u^level) sum e[i][j] g^i (f^(j) o g).
struct DerivativeExpansion {
    int level = 0;
    std::vector<std::vector<UniPoly>> e;  // [i < r_P][j < r_L]
};

namespace detail {

inline DerivativeExpansion expansion_base(const CompositionContext& ctx) {
    DerivativeExpansion x;
    x.level = 0;
    x.e.assign(size_t(ctx.r_P()), std::vector<UniPoly>(size_t(ctx.r_L())));
    x.e[0][0] = UniPoly::constant(Rational(1));
    return x;
}

/// One step of the derivative recursion: quotient rule on the numerators
/// plus the three rewriting tables, with the denominator kept at exactly
/// u^(level+1) (no mid-recursion cancellation).
inline DerivativeExpansion expansion_step(const CompositionContext& ctx,
                                          const DerivativeExpansion& cur) {
    int rp = ctx.r_P(), rl = ctx.r_L();
    DerivativeExpansion nxt;
    nxt.level = cur.level + 1;
    nxt.e.assign(size_t(rp), std::vector<UniPoly>(size_t(rl)));
    UniPoly du = ctx.u.derivative();
    const UniPoly& uhat = ctx.uhat;
    Rational ell(long(cur.level));
    for (int i = 0; i < rp; ++i) {
        for (int j = 0; j < rl; ++j) {
            const UniPoly& eij = cur.e[size_t(i)][size_t(j)];
            if (eij.is_zero()) continue;
            // (e' u - level * e u') / u^(level+1)
            nxt.e[size_t(i)][size_t(j)] += eij.derivative() * ctx.u - ell * (eij * du);
            // i g^(i-1) g' (f^(j) o g)
            if (i > 0) {
                for (int a = 0; a < rp; ++a) {
                    const UniPoly& gp = ctx.gprime_pow[size_t(i - 1)][size_t(a)];
                    if (gp.is_zero()) continue;
                    nxt.e[size_t(a)][size_t(j)] += Rational(long(i)) * (eij * (uhat * gp));
                }
            }
            // g^i g' (f^(j+1) o g)
            if (j + 1 < rl) {
                for (int a = 0; a < rp; ++a) {
                    const UniPoly& gp = ctx.gprime_pow[size_t(i)][size_t(a)];
                    if (gp.is_zero()) continue;
                    nxt.e[size_t(a)][size_t(j + 1)] += eij * (uhat * gp);
                }
            } else {
                for (int b = 0; b < rl; ++b)
                    for (int a = 0; a < rp; ++a) {
                        const UniPoly& tg = ctx.top_gprime[size_t(i)][size_t(b)][size_t(a)];
                        if (tg.is_zero()) continue;
                        nxt.e[size_t(a)][size_t(b)] += eij * tg;
                    }
            }
        }
    }
    int degcap = nxt.level * ctx.step_degree;
    for (const auto& row : nxt.e)
        for (const auto& p : row)
            if (p.degree() > degcap)
                throw internal_error("derivative expansion exceeded its degree certificate");
    return nxt;
}

} // namespace detail

inline DerivativeExpansion derivative_expansion(const CompositionContext& ctx, int level) {
    if (level < 0) throw error("negative derivative level");
    DerivativeExpansion x = detail::expansion_base(ctx);
    for (int l = 0; l < level; ++l) x = detail::expansion_step(ctx, x);
    return x;
}

} // namespace dfc

#include "dfc/compose_solve.hpp"
