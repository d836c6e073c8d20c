#include <catch2/catch_amalgamated.hpp>

#include "dfc/prng.hpp"
#include "dfc/series.hpp"

using namespace dfc;

namespace {

UniPoly upoly(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return UniPoly(std::move(v));
}

TruncSeries<Rational> rser(std::initializer_list<Rational> cs) {
    return TruncSeries<Rational>(Rational(0), std::vector<Rational>(cs));
}

TruncSeries<Rational> random_series(Pcg32& rng, int n, bool unit_val = false) {
    std::vector<Rational> cs(static_cast<size_t>(n));
    for (auto& c : cs) c = Rational(rng.uniform(-3, 3));
    if (unit_val) cs[0] = Rational(0);
    return TruncSeries<Rational>(Rational(0), std::move(cs));
}

} // namespace

TEST_CASE("series arithmetic") {
    auto a = rser({Rational(1), Rational(1), Rational(0)});
    auto b = rser({Rational(1), Rational(-1), Rational(0)});
    auto prod = series::mul(a, b);
    CHECK(prod.coeff(0) == Rational(1));
    CHECK(prod.coeff(1) == Rational(0));
    CHECK(prod.coeff(2) == Rational(-1));

    auto sum = series::add(a, b);
    CHECK(sum.coeff(0) == Rational(2));
    CHECK(sum.coeff(1) == Rational(0));

    auto d = series::derive(rser({Rational(0), Rational(0), Rational(1)}));
    CHECK(d.coeff(0) == Rational(0));
    CHECK(d.coeff(1) == Rational(2));

    // elements of distinct quotient rings refuse to combine
    auto mod1 = QuotElem::make_modulus(upoly({-2, 0, 1}));
    auto mod2 = QuotElem::make_modulus(upoly({-3, 0, 1}));
    QuotElem t1 = QuotElem::generator(mod1), t2 = QuotElem::generator(mod2);
    TruncSeries<QuotElem> s1(ring_zero(t1), {t1});
    TruncSeries<QuotElem> s2(ring_zero(t2), {t2});
    CHECK_THROWS_AS(series::mul(s1, s2), error);
    CHECK_THROWS_AS(series::add(a, rser({Rational(1)})).coeff(1), truncation_error);
}

TEST_CASE("series composition") {
    // f = 1 + X at 0, g = x^2
    auto f = rser({Rational(1), Rational(1), Rational(0)});
    auto g = rser({Rational(0), Rational(0), Rational(1)});
    auto fg = series_compose(f, g);
    CHECK(fg.coeff(0) == Rational(1));
    CHECK(fg.coeff(1) == Rational(0));
    CHECK(fg.coeff(2) == Rational(1));

    // f = X^2, g = x + x^2 at order 4: (x + x^2)^2 = x^2 + 2x^3 + ...
    auto f2 = rser({Rational(0), Rational(0), Rational(1), Rational(0)});
    auto g2 = rser({Rational(0), Rational(1), Rational(1), Rational(0)});
    auto fg2 = series_compose(f2, g2);
    CHECK(fg2.coeff(0) == Rational(0));
    CHECK(fg2.coeff(1) == Rational(0));
    CHECK(fg2.coeff(2) == Rational(1));
    CHECK(fg2.coeff(3) == Rational(2));

    // base point mismatch
    TruncSeries<Rational> f3(Rational(1), {Rational(1), Rational(1)});
    CHECK_THROWS_AS(series_compose(f3, g), error);
}

TEST_CASE("chain rule on truncations", "[property]") {
    Pcg32 rng(53);
    for (int t = 0; t < 30; ++t) {
        int n = 12;
        auto f = random_series(rng, n);
        auto g = random_series(rng, n, true);
        auto lhs = series::derive(series_compose(f, g));
        auto rhs = series::mul(series_compose(series::derive(f), g), series::derive(g));
        for (int k = 0; k + 2 < n; ++k) CHECK(lhs.coeff(k) == rhs.coeff(k));
    }
}

TEST_CASE("branch lifting") {
    // gsqrt = sqrt(1 + x) branch through (0, 1) of y^2 - 1 - x
    BiPoly P({upoly({-1, -1}), UniPoly(), upoly({1})});
    auto g = branch_lift(P, Rational(0), Rational(1), 4);
    CHECK(g.coeff(0) == Rational(1));
    CHECK(g.coeff(1) == Rational(1, 2));
    CHECK(g.coeff(2) == Rational(-1, 8));
    CHECK(g.coeff(3) == Rational(1, 16));

    // identity branch of y - x
    BiPoly Pid({upoly({0, -1}), upoly({1})});
    auto gid = branch_lift(Pid, Rational(0), Rational(0), 5);
    CHECK(gid.coeff(0) == Rational(0));
    CHECK(gid.coeff(1) == Rational(1));
    CHECK(gid.coeff(2) == Rational(0));

    // ramified point: y^2 - x at (0, 0)
    BiPoly Pram({upoly({0, -1}), UniPoly(), upoly({1})});
    CHECK_THROWS_AS(branch_lift(Pram, Rational(0), Rational(0), 4), singular_point_error);
}

TEST_CASE("branch postcondition on random instances", "[property]") {
    Pcg32 rng(59);
    int found = 0;
    while (found < 10) {
        // random P with a forced rational branch at (0, y0)
        int rp = int(rng.uniform(1, 2));
        BiPoly P;
        {
            std::vector<UniPoly> cs(size_t(rp) + 1);
            for (auto& p : cs) {
                std::vector<Rational> v(size_t(rng.uniform(1, 3)));
                for (auto& c : v) c = Rational(rng.uniform(-3, 3));
                p = UniPoly(std::move(v));
            }
            P = BiPoly(std::move(cs));
        }
        if (P.y_degree() < 1) continue;
        Rational y0(rng.uniform(-2, 2));
        // shift P so that (0, y0) lies on the curve
        UniPoly at = P.eval_x(Rational(0));
        BiPoly Q = P - BiPoly({UniPoly::constant(at.eval(y0))});
        UniPoly qat = Q.eval_x(Rational(0));
        UniPoly dqat = qat.derivative();
        if (dqat.eval(y0).is_zero()) continue;
        auto g = branch_lift(Q, Rational(0), y0, 16);
        CHECK(detail::bipoly_eval_series(Q, g).is_zero_through(16));
        ++found;
    }
}

TEST_CASE("all branches over the generic root") {
    // y^2 - x - 2 at 0: K = Q[t]/(t^2 - 2), g = t + (t/4)x - (t/32)x^2 + ...
    BiPoly P({upoly({-2, -1}), UniPoly(), upoly({1})});
    auto g = all_branches(P, Rational(0), 3);
    const UniPoly& m = g.coeff(0).modulus();
    CHECK(m == upoly({-2, 0, 1}));
    CHECK(g.coeff(0).rep() == upoly({0, 1}));
    CHECK(g.coeff(1).rep() == UniPoly({Rational(0), Rational(1, 4)}));
    CHECK(g.coeff(2).rep() == UniPoly({Rational(0), Rational(-1, 32)}));

    // y^2 - x - 1 at 0: t^2 = 1 splits; generic branch is t + (t/2)x + ...
    BiPoly P2({upoly({-1, -1}), UniPoly(), upoly({1})});
    auto g2 = all_branches(P2, Rational(0), 2);
    CHECK(g2.coeff(1).rep() == UniPoly({Rational(0), Rational(1, 2)}));

    // non-squarefree P(0, y): (y - 1)^2 - x has P(0,y) = (y-1)^2
    BiPoly bad = BiPoly({upoly({1, -1}), upoly({-2}), upoly({1})});
    CHECK_THROWS_AS(all_branches(bad, Rational(0), 3), singular_point_error);
}

TEST_CASE("generic branch specializes to the rational branches", "[property]") {
    // P with P(0,y) = (y-1)(y-2): both specializations of the generic branch
    // must match the direct rational lifts coefficient by coefficient.
    BiPoly P({upoly({2, 1}), upoly({-3, -1}), upoly({1})});  // y^2 - (3+x)y + 2 + x
    auto gen = all_branches(P, Rational(0), 8);
    for (long root : {1L, 2L}) {
        auto direct = branch_lift(P, Rational(0), Rational(root), 8);
        for (int k = 0; k < 8; ++k)
            CHECK(gen.coeff(k).rep().eval(Rational(root)) == direct.coeff(k));
    }
}

TEST_CASE("local solution bases") {
    DiffOp Dm1({upoly({-1}), upoly({1})});
    auto basis = local_solution_basis(Dm1, Rational(0), 5);
    REQUIRE(basis.size() == 1);
    Rational fact(1);
    for (int n = 0; n < 5; ++n) {
        if (n > 0) fact = fact * Rational(1, n);
        CHECK(basis[0].coeff(n) == fact);
    }

    DiffOp D2 = DiffOp::term(upoly({1}), 2);
    auto basis2 = local_solution_basis(D2, Rational(0), 6);
    REQUIRE(basis2.size() == 2);
    CHECK(basis2[0].coeff(0) == Rational(1));
    for (int n = 1; n < 6; ++n) CHECK(basis2[0].coeff(n).is_zero());
    CHECK(basis2[1].coeff(1) == Rational(1));
    CHECK(basis2[1].coeff(0).is_zero());

    DiffOp xDm1({upoly({-1}), upoly({0, 1})});  // xD - 1
    CHECK_THROWS_AS(local_solution_basis(xDm1, Rational(0), 5), singular_point_error);
}

TEST_CASE("local basis elements are annihilated", "[property]") {
    Pcg32 rng(61);
    for (int t = 0; t < 20; ++t) {
        int r = int(rng.uniform(1, 3));
        std::vector<UniPoly> cs(size_t(r) + 1);
        for (auto& p : cs) {
            std::vector<Rational> v(size_t(rng.uniform(1, 3)));
            for (auto& c : v) c = Rational(rng.uniform(-3, 3));
            p = UniPoly(std::move(v));
        }
        DiffOp L(std::move(cs));
        if (L.order() < 1 || L.lc().eval(Rational(0)).is_zero()) continue;
        int N = 14;
        auto basis = local_solution_basis(L, Rational(0), N);
        REQUIRE(int(basis.size()) == L.order());
        for (const auto& f : basis)
            CHECK(op_apply(L, f).is_zero_through(N - L.order()));
    }
}
