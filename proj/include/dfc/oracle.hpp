#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfc/bipoly.hpp"
#include "dfc/diffop.hpp"
#include "dfc/errors.hpp"
#include "dfc/quotient.hpp"
#include "dfc/series.hpp"

namespace dfc {

/// Outcome of an end-to-end series verification of one operator.
struct VerificationReport {
    bool pass = false;
    Rational expansion_point;
    int checked_order = 0;
    struct Failure {
        UniPoly branch_modulus;  // modulus of the quotient ring that failed
        int basis_index = 0;     // which local solution of L
        int exponent = 0;        // first surviving exponent
        std::string residual;    // offending coefficient, printed
    };
    std::optional<Failure> first_failure;
};

/// Checks (S1): P(alpha, .) squarefree of full degree, and (S2): lc(L) does
/// not vanish at any root of P(alpha, .).  Returns an explanation when the
/// point is inadmissible.
inline std::optional<std::string> admissibility_obstruction(const DiffOp& L, const BiPoly& P,
                                                            const Rational& alpha) {
    UniPoly pa = P.eval_x(alpha);
    if (pa.degree() != P.y_degree())
        return "(S1) leading y-coefficient of P vanishes at alpha";
    if (poly_gcd(pa, pa.derivative()).degree() != 0)
        return "(S1) P(alpha, y) is not squarefree";
    // lc(L)(t) coprime to P(alpha, t)
    UniPoly lct = L.lc();  // the polynomial evaluated at the branch values
    if (poly_gcd(pa, lct).degree() != 0)
        return "(S2) lc(L) vanishes at a root of P(alpha, y)";
    return std::nullopt;
}

/// The first `count` admissible expansion points among 0, 1, -1, 2, -2, ...
inline std::vector<Rational> admissible_points(const DiffOp& L, const BiPoly& P, int count) {
    std::vector<Rational> out;
    for (long k = 0; int(out.size()) < count && k <= 200; ++k) {
        for (long s : {1L, -1L}) {
            if (k == 0 && s == -1) continue;
            Rational alpha(s * k);
            if (!admissibility_obstruction(L, P, alpha)) {
                out.push_back(alpha);
                if (int(out.size()) == count) break;
            }
        }
    }
    if (int(out.size()) < count)
        throw error("no admissible expansion point among 0, 1, -1, ..., 200");
    return out;
}

/// Default verification depth: beyond twice the operator size the residual
/// of a polynomial identity of that size cannot stay hidden.
inline int default_verification_order(const DiffOp& M) {
    return 2 * (M.order() + std::max(M.x_degree(), 0)) + 10;
}

namespace detail {

/// Verification over one quotient ring; recurses on modulus splits.
inline void verify_on_modulus(const DiffOp& M, const DiffOp& L, const BiPoly& P,
                              const Rational& alpha, int N, const UniPoly& modulus,
                              VerificationReport& report) {
    auto mod = QuotElem::make_modulus(modulus);
    QuotElem t = QuotElem::generator(mod);
    QuotElem a = QuotElem::from_rational(mod, alpha);
    try {
        int Nwork = N + std::max(M.order(), 0);
        TruncSeries<QuotElem> g = branch_lift(P, a, t, Nwork);
        auto basis = local_solution_basis(L, t, Nwork);
        for (size_t i = 0; i < basis.size(); ++i) {
            TruncSeries<QuotElem> comp = series_compose(basis[i], g);
            TruncSeries<QuotElem> res = op_apply(M, comp);
            for (int k = 0; k < N; ++k) {
                if (res.coeff(k).is_zero()) continue;
                if (!report.first_failure) {
                    VerificationReport::Failure f;
                    f.branch_modulus = modulus;
                    f.basis_index = int(i);
                    f.exponent = k;
                    f.residual = res.coeff(k).rep().str("t");
                    report.first_failure = f;
                }
                return;
            }
        }
    } catch (const zero_divisor_error& zd) {
        // split the modulus and verify each factor ring separately
        UniPoly w = zd.witness;
        UniPoly cof = zd.modulus.div_exact(w);
        verify_on_modulus(M, L, P, alpha, N, w.monic(), report);
        if (report.first_failure) return;
        verify_on_modulus(M, L, P, alpha, N, cof.monic(), report);
    }
}

} // namespace detail

/// Asserts that M annihilates f.g for every branch g of P at alpha and
/// every local solution f of L, through series order N.  All branches are
/// tracked at once over Q[t]/(P(alpha, t)).
inline VerificationReport verify_annihilation(const DiffOp& M, const DiffOp& L, const BiPoly& P,
                                              const Rational& alpha, int N) {
    if (auto obstruction = admissibility_obstruction(L, P, alpha))
        throw singular_point_error("inadmissible expansion point: " + *obstruction);
    if (M.is_zero()) throw error("verifying the zero operator");
    VerificationReport report;
    report.expansion_point = alpha;
    report.checked_order = N;
    UniPoly m = P.eval_x(alpha).monic();
    detail::verify_on_modulus(M, L, P, alpha, N, m, report);
    report.pass = !report.first_failure;
    return report;
}

} // namespace dfc
