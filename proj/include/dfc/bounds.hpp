#pragma once

#include <utility>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/rational.hpp"

namespace dfc {

/// The four size parameters of an input pair: order/degree of the operator
/// and y-/x-degree of the defining polynomial.
struct ProblemShape {
    long r_L = 1, d_L = 0, r_P = 1, d_P = 0;
};

/// Leading coefficient factor data of an operator: total x-degree, order,
/// and the (degree, cost) list of its removable factors.
struct SingularityProfile {
    long deg_x_M = 0;
    long ord_M = 0;
    std::vector<std::pair<long, long>> factors;  // (degree of p_i, cost c_i)
};

namespace detail {
inline Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline Integer ceil_rational(const Rational& r) {
    return ceil_div(r.num(), r.den());
}
inline void check_shape(const ProblemShape& s) {
    if (s.r_L < 1 || s.r_P < 1 || s.d_L < 0 || s.d_P < 0)
        throw error("invalid shape: need r_L, r_P >= 1 and d_L, d_P >= 0");
}
} // namespace detail

/// Smallest degree d admitted by the linear-algebra order-degree curve at
/// order r:  d >= r (3 r_P + d_L - 1) d_P r_L r_P / (r + 1 - r_L r_P).
inline Integer thm2_degree(const ProblemShape& s, long r) {
    detail::check_shape(s);
    if (r < s.r_L * s.r_P) throw error("order below r_L * r_P");
    Integer num = Integer(r) * (3 * s.r_P + s.d_L - 1) * s.d_P * s.r_L * s.r_P;
    Integer den = r + 1 - s.r_L * s.r_P;
    return detail::ceil_div(num, den);
}

/// Degree bound for the minimal-order operator at order r <= r_L r_P:
/// 2 r^2 d_P - (r-2)(r-1)/2 + r d_P r_L (2 r_P + d_L - 1) - d_P r_L (r_P - 1).
inline Integer thm3_degree(const ProblemShape& s, long r) {
    detail::check_shape(s);
    if (r < 1 || r > s.r_L * s.r_P) throw error("order outside [1, r_L * r_P]");
    Integer rr(r);
    return 2 * rr * rr * s.d_P - (rr - 2) * (rr - 1) / 2
         + rr * s.d_P * s.r_L * (2 * s.r_P + s.d_L - 1)
         - Integer(s.d_P) * s.r_L * (s.r_P - 1);
}

/// Interpolated generic degree of the minimal-order operator.  The formula
/// is stated for all parameters >= 2; out-of-scope shapes still evaluate
/// but are flagged.
struct ConjectureValue {
    Integer value;
    bool in_scope;
};
inline ConjectureValue conjecture_degree(const ProblemShape& s) {
    detail::check_shape(s);
    Integer rl(s.r_L), rp(s.r_P), dl(s.d_L), dp(s.d_P);
    Integer value = rl * rl * (2 * rp * (rp - 1) + 1) * dp
                  + rl * rp * (dp * (dl + 1) + 1)
                  + dl * dp
                  - rl * rl * rp * rp
                  - rl * dl * dp;
    bool in_scope = s.r_L >= 2 && s.d_L >= 2 && s.r_P >= 2 && s.d_P >= 2;
    return {value, in_scope};
}

/// Order-degree curve from removable singularities:
/// d >= deg_x(M) - ceil( sum (1 - c_i/(r - ord_M + 1))^+ deg(p_i) ),
/// with one ceiling applied to the whole sum.
inline Integer thm9_degree(const SingularityProfile& p, long r) {
    if (r < p.ord_M) throw error("order below the operator order");
    Rational sum(0);
    Rational denom(r - p.ord_M + 1);
    for (const auto& [deg, cost] : p.factors) {
        Rational term = Rational(1) - Rational(cost) / denom;
        if (term.sign() > 0) sum += term * Rational(deg);
    }
    return Integer(p.deg_x_M) - detail::ceil_rational(sum);
}

/// Upper bound on the degree of the non-removable part of the leading
/// coefficient: d_P (4 r_L r_P - 2 r_L + d_L).
inline Integer lemma7_bound(const ProblemShape& s) {
    detail::check_shape(s);
    return Integer(s.d_P) * (4 * s.r_L * s.r_P - 2 * s.r_L + s.d_L);
}

/// Predicted order-degree curve in terms of delta and a uniform cost c:
/// d >= delta (1 - c/(r - ord + 1)) + deg_x(M) c/(r - ord + 1).
inline Integer thm5_degree(const Integer& delta, long deg_x_M, long ord_M, long c, long r) {
    if (r < ord_M + c - 1) throw error("order below ord_M + c - 1");
    Rational denom(r - ord_M + 1);
    Rational val = Rational(delta) * (Rational(1) - Rational(c) / denom)
                 + Rational(deg_x_M) * Rational(c) / denom;
    return detail::ceil_rational(val);
}

/// Default removability cost: 1 when r_P > 1, r_L when r_P = 1.
inline long default_cost(const ProblemShape& s) {
    detail::check_shape(s);
    return s.r_P > 1 ? 1 : s.r_L;
}

} // namespace dfc
