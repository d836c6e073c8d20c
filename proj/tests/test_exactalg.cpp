#include <catch2/catch_amalgamated.hpp>

#include "dfc/bipoly.hpp"
#include "dfc/matrix.hpp"
#include "dfc/modular.hpp"
#include "dfc/prng.hpp"
#include "dfc/quotient.hpp"
#include "dfc/unipoly.hpp"

using namespace dfc;

namespace {

UniPoly upoly(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return UniPoly(std::move(v));
}

UniPoly random_poly(Pcg32& rng, int maxdeg, long height) {
    std::vector<Rational> v(size_t(rng.uniform(0, maxdeg)) + 1);
    for (auto& c : v) c = Rational(rng.uniform(-height, height));
    return UniPoly(std::move(v));
}

BiPoly random_bipoly(Pcg32& rng, int ydeg, int xdeg, long height) {
    std::vector<UniPoly> cs(size_t(ydeg) + 1);
    for (auto& p : cs) {
        std::vector<Rational> v(size_t(xdeg) + 1);
        for (auto& c : v) c = Rational(rng.uniform(-height, height));
        p = UniPoly(std::move(v));
    }
    return BiPoly(std::move(cs));
}

} // namespace

TEST_CASE("rational canonical form") {
    Rational a(2, 4);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    Rational b(-3, -6);
    CHECK(b.num() == 1);
    CHECK(b.den() == 2);
    Rational c(3, -6);
    CHECK(c.num() == -1);
    CHECK(c.den() == 2);
    CHECK(Rational("7/21") == Rational(1, 3));
    CHECK_THROWS_AS(Rational(1, 0), error);
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
}

TEST_CASE("poly_gcd on the pinned pairs") {
    UniPoly a = upoly({-1, 0, 1});      // x^2 - 1
    UniPoly b = upoly({-1, 1});         // x - 1
    CHECK(poly_gcd(a, b) == b);
    UniPoly c = upoly({1, 0, 1});       // x^2 + 1
    CHECK(poly_gcd(c, UniPoly()) == c);
    CHECK(poly_gcd(UniPoly(), UniPoly()) == UniPoly());
    CHECK(poly_gcd(upoly({-2, 0, 1}), upoly({0, -1, 1})) == UniPoly::constant(Rational(1)));
}

TEST_CASE("poly_gcd divides both arguments", "[property]") {
    Pcg32 rng(42);
    for (int t = 0; t < 50; ++t) {
        UniPoly a = random_poly(rng, 5, 4);
        UniPoly b = random_poly(rng, 5, 4);
        UniPoly g = poly_gcd(a, b);
        if (g.is_zero()) {
            CHECK(a.is_zero());
            CHECK(b.is_zero());
            continue;
        }
        CHECK(a.divmod(g).second.is_zero());
        CHECK(b.divmod(g).second.is_zero());
        // common divisors divide g: check via the half-extended relation
        auto [gg, s] = poly_half_xgcd(a, b);
        CHECK(gg == g);
    }
}

TEST_CASE("resultants and discriminants") {
    BiPoly P = BiPoly({upoly({0, -1}), UniPoly(), upoly({1})});  // y^2 - x
    BiPoly dP = BiPoly({UniPoly(), upoly({2})});                 // 2y
    CHECK(resultant_y(P, dP) == upoly({0, -4}));                 // -4x
    BiPoly A = BiPoly({upoly({0, -1}), upoly({1})});             // y - x
    BiPoly B = BiPoly({upoly({0, 1}), upoly({1})});              // y + x
    CHECK(resultant_y(A, B) == upoly({0, 2}));                   // 2x
    CHECK(resultant_y(P, BiPoly({upoly({1})})) == upoly({1}));   // res with a unit
    CHECK_THROWS_AS(resultant_y(BiPoly(), BiPoly()), error);

    CHECK(discriminant_y(P) == upoly({0, -4}));
    CHECK(discriminant_y(A) == upoly({1}));
    BiPoly sq = A * A;                                           // (y - x)^2
    CHECK(discriminant_y(sq).is_zero());
    CHECK_THROWS_AS(discriminant_y(BiPoly({upoly({1, 1})})), error);
}

TEST_CASE("squarefree detection agrees with the resultant", "[property]") {
    Pcg32 rng(7);
    int nontrivial = 0;
    for (int t = 0; t < 60; ++t) {
        BiPoly P = random_bipoly(rng, 1 + int(rng.uniform(0, 2)), int(rng.uniform(0, 3)), 3);
        if (P.y_degree() < 1) continue;
        if (rng.uniform(0, 2) == 0) P = P * P;  // force some non-squarefree cases
        bool res_zero = resultant_y(P, P.dy()).is_zero();
        // gcd over Q(x) has positive y-degree iff the subresultant chain dies:
        // probe with a pseudo-euclid estimate via full_reduce of P by its
        // derivative-gcd through series is overkill; compare against the
        // direct criterion deg gcd_y > 0 computed by pseudo-remainders.
        BiPoly a = P, b = P.dy();
        while (!b.is_zero() && b.y_degree() >= 0) {
            if (a.y_degree() < b.y_degree()) { std::swap(a, b); continue; }
            if (b.y_degree() == 0) { a = b; b = BiPoly(); break; }
            BiPoly r = a;
            while (!r.is_zero() && r.y_degree() >= b.y_degree()) r = pseudo_reduce_step(r, b);
            a = b;
            b = r;
        }
        bool gcd_positive = !a.is_zero() && a.y_degree() > 0;
        CHECK(res_zero == gcd_positive);
        if (res_zero) ++nontrivial;
    }
    CHECK(nontrivial > 5);  // the squared cases must actually appear
}

TEST_CASE("pseudo reduction steps") {
    BiPoly P = BiPoly({upoly({0, -1}), UniPoly(), upoly({1})});  // y^2 - x
    BiPoly Q2 = BiPoly({UniPoly(), UniPoly(), upoly({1})});      // y^2
    BiPoly Q3 = BiPoly({UniPoly(), UniPoly(), UniPoly(), upoly({1})});  // y^3
    CHECK(pseudo_reduce_step(Q2, P) == BiPoly({upoly({0, 1})}));            // x
    CHECK(pseudo_reduce_step(Q3, P) == BiPoly({UniPoly(), upoly({0, 1})})); // x*y
    CHECK(pseudo_reduce_step(P, P).is_zero());
    CHECK_THROWS_AS(pseudo_reduce_step(BiPoly({upoly({1})}), P), error);

    auto [r1, k1] = full_reduce(Q2, P);
    CHECK(r1 == BiPoly({upoly({0, 1})}));
    CHECK(k1 == 1);
    auto [r2, k2] = full_reduce(BiPoly({UniPoly(), upoly({1})}), P);
    CHECK(r2 == BiPoly({UniPoly(), upoly({1})}));
    CHECK(k2 == 0);
    BiPoly Q4 = Q2 * Q2;
    auto [r3, k3] = full_reduce(Q4, P);
    CHECK(r3 == BiPoly({upoly({0, 0, 1})}));  // x^2
    CHECK(k3 == 2);
}

TEST_CASE("pseudo reduction degree contract", "[property]") {
    Pcg32 rng(11);
    for (int t = 0; t < 40; ++t) {
        BiPoly P = random_bipoly(rng, 1 + int(rng.uniform(0, 2)), int(rng.uniform(0, 3)), 4);
        if (P.y_degree() < 1) continue;
        BiPoly Q = random_bipoly(rng, P.y_degree() + int(rng.uniform(0, 2)), int(rng.uniform(0, 3)), 4);
        if (Q.is_zero() || Q.y_degree() < P.y_degree()) continue;
        BiPoly R = pseudo_reduce_step(Q, P);
        if (!R.is_zero()) {
            CHECK(R.y_degree() <= Q.y_degree() - 1);
            CHECK(R.x_degree() <= Q.x_degree() + P.x_degree());
        }
    }
}

TEST_CASE("squarefree decomposition") {
    UniPoly f = upoly({0, 0, 1}) * upoly({-1, 1});  // x^2 (x - 1)
    auto dec = squarefree_decompose(f);
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].first == upoly({-1, 1}));
    CHECK(dec[0].second == 1);
    CHECK(dec[1].first == upoly({0, 1}));
    CHECK(dec[1].second == 2);

    auto dec2 = squarefree_decompose(upoly({-1, 0, 1}));
    REQUIRE(dec2.size() == 1);
    CHECK(dec2[0].first == upoly({-1, 0, 1}));
    CHECK(dec2[0].second == 1);

    UniPoly g = upoly({-2, 0, 1});
    auto dec3 = squarefree_decompose(g * g * g);
    REQUIRE(dec3.size() == 1);
    CHECK(dec3[0].first == g);
    CHECK(dec3[0].second == 3);

    CHECK_THROWS_AS(squarefree_decompose(UniPoly()), error);
}

TEST_CASE("squarefree decomposition reconstructs the input", "[property]") {
    Pcg32 rng(13);
    for (int t = 0; t < 30; ++t) {
        UniPoly f = random_poly(rng, 3, 3);
        UniPoly g = random_poly(rng, 2, 3);
        if (f.is_zero() || g.is_zero()) continue;
        UniPoly a = f * g * g;
        auto dec = squarefree_decompose(a);
        UniPoly prod = UniPoly::constant(Rational(1));
        int degsum = 0;
        for (const auto& [fac, mult] : dec) {
            for (int i = 0; i < mult; ++i) prod = prod * fac;
            degsum += mult * fac.degree();
        }
        // leading coefficient times the monic factor product reconstructs a
        CHECK(UniPoly::constant(a.lc()) * prod == a);
        CHECK(degsum == a.degree());
        for (size_t i = 0; i < dec.size(); ++i)
            for (size_t j = i + 1; j < dec.size(); ++j)
                CHECK(poly_gcd(dec[i].first, dec[j].first).degree() == 0);
    }
}

TEST_CASE("exact nullspace") {
    ExactMatrix id(2, 2);
    id.at(0, 0) = Rational(1);
    id.at(1, 1) = Rational(1);
    CHECK(nullspace(id).empty());

    ExactMatrix m(1, 2);
    m.at(0, 0) = Rational(1);
    m.at(0, 1) = Rational(1);
    auto basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == std::vector<Rational>{Rational(1), Rational(-1)});

    ExactMatrix z(2, 3);
    CHECK(nullspace(z).size() == 3);
}

TEST_CASE("modular nullspace and bad primes") {
    ExactMatrix id(2, 2);
    id.at(0, 0) = Rational(1);
    id.at(1, 1) = Rational(1);
    CHECK(nullspace_mod_prime(id, 101).kernel_dim == 0);

    ExactMatrix m(1, 2);
    m.at(0, 0) = Rational(1);
    m.at(0, 1) = Rational(1);
    CHECK(nullspace_mod_prime(m, 101).kernel_dim == 1);

    ExactMatrix bad(1, 1);
    bad.at(0, 0) = Rational(1, 3);
    CHECK_THROWS_AS(nullspace_mod_prime(bad, 3), bad_prime_error);
}

TEST_CASE("modular kernel dimension matches the exact one", "[property]") {
    Pcg32 rng(17);
    const auto& primes = prime_list();
    for (int t = 0; t < 40; ++t) {
        size_t rows = size_t(rng.uniform(1, 6)), cols = size_t(rng.uniform(1, 6));
        ExactMatrix m(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                m.at(i, j) = Rational(rng.uniform(-9, 9));
        size_t exact_dim = nullspace(m).size();
        auto mod = nullspace_mod_prime(m, primes[0]);
        if (mod.kernel_dim != exact_dim) {
            // allowed with vanishing probability: retry one other prime
            mod = nullspace_mod_prime(m, primes[1]);
        }
        CHECK(mod.kernel_dim == exact_dim);
    }
}

TEST_CASE("rational reconstruction") {
    auto r = rational_reconstruct(Integer(65), Integer(97));
    REQUIRE(r.has_value());
    CHECK(*r == Rational(1, 3));
    r = rational_reconstruct(Integer(1), Integer(97));
    REQUIRE(r.has_value());
    CHECK(*r == Rational(1));
    r = rational_reconstruct(Integer(96), Integer(97));
    REQUIRE(r.has_value());
    CHECK(*r == Rational(-1));
}

TEST_CASE("rational reconstruction round-trip", "[property]") {
    Pcg32 rng(23);
    Integer m = 1;
    for (uint64_t p : {prime_list()[0], prime_list()[1]}) m *= Integer(static_cast<unsigned long>(p));
    for (int t = 0; t < 200; ++t) {
        Rational q(rng.uniform(-1000000, 1000000), rng.uniform(1, 1000000));
        // residue of q mod m
        Integer den_inv;
        Integer den = q.den() % m;
        REQUIRE(mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) != 0);
        Integer res = (q.num() % m) * den_inv % m;
        if (res < 0) res += m;
        auto back = rational_reconstruct(res, m);
        REQUIRE(back.has_value());
        CHECK(*back == q);
    }
}

TEST_CASE("quotient ring inverses and witnesses") {
    auto mod = QuotElem::make_modulus(upoly({-2, 0, 1}));  // t^2 - 2
    QuotElem t = QuotElem::generator(mod);
    auto inv = quot_inverse(t);
    REQUIRE(std::holds_alternative<QuotElem>(inv));
    CHECK(std::get<QuotElem>(inv).rep() == UniPoly({Rational(0), Rational(1, 2)}));  // t/2
    CHECK((t * std::get<QuotElem>(inv)).rep() == upoly({1}));

    QuotElem one = QuotElem::from_rational(mod, Rational(1));
    auto inv1 = quot_inverse(one);
    REQUIRE(std::holds_alternative<QuotElem>(inv1));
    CHECK(std::get<QuotElem>(inv1) == one);

    auto mod2 = QuotElem::make_modulus(upoly({0, -1, 1}));  // t^2 - t, squarefree
    QuotElem t2 = QuotElem::generator(mod2);
    auto w = quot_inverse(t2);
    REQUIRE(std::holds_alternative<UniPoly>(w));
    CHECK(std::get<UniPoly>(w) == upoly({0, 1}));  // witness t

    CHECK_THROWS_AS(QuotElem::make_modulus(upoly({0, 0, 1})), error);  // t^2 not squarefree
}

TEST_CASE("unipoly matrix determinant") {
    // det [[x, 1], [1, x]] = x^2 - 1
    std::vector<std::vector<UniPoly>> m = {
        {upoly({0, 1}), upoly({1})},
        {upoly({1}), upoly({0, 1})},
    };
    CHECK(unipoly_matrix_det(m) == upoly({-1, 0, 1}));
    // singular matrix
    std::vector<std::vector<UniPoly>> s = {
        {upoly({0, 1}), upoly({0, 1})},
        {upoly({0, 1}), upoly({0, 1})},
    };
    CHECK(unipoly_matrix_det(s).is_zero());
}
