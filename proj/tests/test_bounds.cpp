#include <catch2/catch_amalgamated.hpp>

#include "dfc/bounds.hpp"

using namespace dfc;

TEST_CASE("linear-algebra curve values") {
    ProblemShape ex{3, 4, 3, 4};
    CHECK(thm2_degree(ex, 9) == 3888);
    CHECK(thm2_degree(ProblemShape{1, 0, 1, 1}, 1) == 2);
    CHECK_THROWS_AS(thm2_degree(ex, 8), error);
}

TEST_CASE("minimal operator degree bound") {
    ProblemShape ex{3, 4, 3, 4};
    CHECK(thm3_degree(ex, 9) == 1568);
    CHECK(thm3_degree(ProblemShape{1, 0, 1, 1}, 1) == 3);
    CHECK_THROWS_AS(thm3_degree(ex, 10), error);
    CHECK_THROWS_AS(thm3_degree(ex, 0), error);
    // specialization r_L = 1, d_L = 0 keeps the r^2 d_P leading term
    ProblemShape alg{1, 0, 7, 5};
    Integer v = thm3_degree(alg, 7);
    CHECK(v == 2 * 49 * 5 - (5 * 6) / 2 + 7 * 5 * (14 - 1) - 5 * 6);
}

TEST_CASE("conjectured generic degree") {
    CHECK(conjecture_degree(ProblemShape{3, 4, 3, 4}).value == 544);
    CHECK(conjecture_degree(ProblemShape{3, 4, 3, 4}).in_scope);
    auto c = conjecture_degree(ProblemShape{2, 2, 2, 2});
    CHECK(c.value == 48);
    CHECK(c.in_scope);
    auto oos = conjecture_degree(ProblemShape{1, 0, 1, 1});
    CHECK_FALSE(oos.in_scope);  // value still defined
}

TEST_CASE("removability curve values") {
    SingularityProfile prof{544, 9, {{456, 1}}};
    CHECK(thm9_degree(prof, 10) == 316);
    CHECK(thm9_degree(prof, 11) == 240);
    CHECK(thm9_degree(prof, 12) == 202);
    CHECK(thm9_degree(prof, 161) == 90);
    CHECK_THROWS_AS(thm9_degree(prof, 8), error);
}

TEST_CASE("nonremovable degree bound") {
    CHECK(lemma7_bound(ProblemShape{3, 4, 3, 4}) == 136);
    CHECK(Integer(544) - lemma7_bound(ProblemShape{3, 4, 3, 4}) == 408);
    CHECK(lemma7_bound(ProblemShape{1, 0, 1, 1}) == 2);
    CHECK(lemma7_bound(ProblemShape{1, 5, 1, 0}) == 0);
}

TEST_CASE("predicted curve from delta") {
    CHECK(thm5_degree(Integer(136), 544, 9, 1, 10) == 340);
    // approaches delta from above as r grows
    Integer prev = 0;
    for (long r : {20L, 50L, 200L, 2000L}) {
        Integer v = thm5_degree(Integer(136), 544, 9, 1, r);
        CHECK(v >= 136);
        if (prev != 0) CHECK(v <= prev);
        prev = v;
    }
    CHECK(thm5_degree(Integer(136), 544, 9, 1, 100000) == 137);
    CHECK(thm5_degree(Integer(0), 500, 5, 2, 10) == 167);  // ceil(1000/6)
    CHECK_THROWS_AS(thm5_degree(Integer(1), 10, 5, 3, 6), error);
}

TEST_CASE("default removability cost") {
    CHECK(default_cost(ProblemShape{3, 4, 3, 4}) == 1);
    CHECK(default_cost(ProblemShape{3, 2, 1, 2}) == 3);
    CHECK(default_cost(ProblemShape{1, 0, 1, 1}) == 1);
}

TEST_CASE("monotonicity in the order") {
    ProblemShape ex{3, 4, 3, 4};
    Integer prev2, prev9;
    SingularityProfile prof{544, 9, {{456, 1}}};
    bool first = true;
    for (long r = 9; r <= 60; ++r) {
        Integer t2 = thm2_degree(ex, r);
        Integer t9 = thm9_degree(prof, r + 1);
        if (!first) {
            CHECK(t2 <= prev2);
            CHECK(t9 <= prev9);
        }
        prev2 = t2;
        prev9 = t9;
        first = false;
    }
}

TEST_CASE("bound hierarchy on the worked shape") {
    ProblemShape ex{3, 4, 3, 4};
    CHECK(conjecture_degree(ex).value <= thm3_degree(ex, 9));
    CHECK(thm3_degree(ex, 9) <= thm2_degree(ex, 9));
}
