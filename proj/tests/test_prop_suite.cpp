#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mcc/gnp.hpp"
#include "mcc/prop_suite.hpp"

using namespace mcc;

TEST_CASE("chernoff_tail_bound substitutes the closed forms") {
    // Bin(100, 0.5) with a = 0.2: exponents collapse to -1 and -2/3.
    CHECK(chernoff_tail_bound(100, 0.5, 0.2, Tail::lower) ==
          doctest::Approx(0.367879).epsilon(1e-5));
    CHECK(chernoff_tail_bound(100, 0.5, 0.2, Tail::upper) ==
          doctest::Approx(0.513417).epsilon(1e-5));

    SUBCASE("upper tail range stops short of 3/2") {
        CHECK_THROWS_AS(chernoff_tail_bound(100, 0.5, 2.0, Tail::upper), std::invalid_argument);
        CHECK_THROWS_AS(chernoff_tail_bound(100, 0.5, 1.5, Tail::upper), std::invalid_argument);
        CHECK_NOTHROW(chernoff_tail_bound(100, 0.5, 1.49, Tail::upper));
        CHECK_NOTHROW(chernoff_tail_bound(100, 0.5, 2.0, Tail::lower));
    }
    SUBCASE("a must be positive, p and n sane") {
        CHECK_THROWS_AS(chernoff_tail_bound(100, 0.5, 0.0, Tail::lower), std::invalid_argument);
        CHECK_THROWS_AS(chernoff_tail_bound(100, 0.5, -1.0, Tail::upper), std::invalid_argument);
        CHECK_THROWS_AS(chernoff_tail_bound(-1, 0.5, 0.2, Tail::lower), std::invalid_argument);
        CHECK_THROWS_AS(chernoff_tail_bound(100, 1.5, 0.2, Tail::lower), std::invalid_argument);
    }
    SUBCASE("monotone decreasing in n, p, and a") {
        for (Tail tail : {Tail::lower, Tail::upper}) {
            double base = chernoff_tail_bound(1000, 0.3, 0.5, tail);
            CHECK(chernoff_tail_bound(2000, 0.3, 0.5, tail) < base);
            CHECK(chernoff_tail_bound(1000, 0.6, 0.5, tail) < base);
            CHECK(chernoff_tail_bound(1000, 0.3, 0.9, tail) < base);
        }
    }
}

TEST_CASE("check_density_xy hits the exact window on complete graphs") {
    Graph k = Graph::complete(60);
    PropCheckConfig cfg;
    cfg.trials = 30;
    cfg.seed = 3;

    // e(X,Y) = |X||Y| exactly, dead centre of the window at p = 1.
    DensityXYReport rep = check_density_xy(k, 1.0, cfg);
    CHECK(rep.case1.feasible);
    CHECK(rep.case2.feasible);
    CHECK(rep.case1.samples == 30);
    CHECK(rep.case2.samples == 30);
    CHECK(rep.fail_rate_case1() == 0.0);
    CHECK(rep.fail_rate_case2() == 0.0);
    CHECK(rep.case1.check == "density_xy");
    CHECK(rep.case1.regime == "case1");
    CHECK(rep.case2.regime == "case2");
}

TEST_CASE("check_density_xy flags an edgeless graph declared dense") {
    Graph g(60);
    PropCheckConfig cfg;
    cfg.trials = 25;
    cfg.seed = 4;

    // e(X,Y) = 0 always sits below (1-alpha)|X||Y|p, so every sample fails.
    DensityXYReport rep = check_density_xy(g, 0.5, cfg);
    CHECK(rep.fail_rate_case1() == 1.0);
    CHECK(rep.fail_rate_case2() == 1.0);
}

TEST_CASE("check_density_xy reports infeasible regimes instead of erroring") {
    Graph tiny(1);
    PropCheckConfig cfg;
    cfg.trials = 5;
    DensityXYReport rep = check_density_xy(tiny, 0.5, cfg);
    CHECK(!rep.case1.feasible);
    CHECK(!rep.case2.feasible);
    CHECK(rep.case1.samples == 0);
    CHECK(rep.fail_rate_case1() == 0.0);
    CHECK(rep.case1.params.find("infeasible") != std::string::npos);
}

TEST_CASE("check_density_xy validates its inputs") {
    Graph g(10);
    PropCheckConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(check_density_xy(g, 0.5, cfg), std::invalid_argument);
    cfg.trials = 1;
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(check_density_xy(g, 0.5, cfg), std::invalid_argument);
    cfg.alpha = 0.25;
    CHECK_THROWS_AS(check_density_xy(g, 0.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(check_density_xy(g, 1.1, cfg), std::invalid_argument);
}

TEST_CASE("check_density_xy stays inside the window on a seeded random graph") {
    Graph g = sample_gnp({5000, 0.05, 13});
    PropCheckConfig cfg;
    cfg.trials = 500;
    cfg.alpha = 0.25;
    cfg.beta = 0.25;
    cfg.seed = 13;

    DensityXYReport rep = check_density_xy(g, 0.05, cfg);
    CHECK(rep.case1.samples == 500);
    CHECK(rep.case2.samples == 500);
    // Floors D log n / p = 24530 and C / p = 7680 exceed n = 5000, so both
    // regimes run size-capped.
    CHECK(rep.case1.capped);
    CHECK(rep.case2.capped);
    CHECK(rep.fail_rate_case1() < 0.01);
    CHECK(rep.fail_rate_case2() < 0.01);
    // Frozen for seeds 13/13.
    CHECK(rep.case1.violations == 0);
    CHECK(rep.case2.violations == 0);

    SUBCASE("same seed, same report") {
        DensityXYReport again = check_density_xy(g, 0.05, cfg);
        CHECK(again.case1.violations == rep.case1.violations);
        CHECK(again.case2.violations == rep.case2.violations);
        CHECK(again.case1.params == rep.case1.params);
    }
}

TEST_CASE("check_density_triples never flags sparse sums") {
    PropCheckConfig cfg;
    cfg.trials = 20;
    cfg.ell_values = {1, 4};
    cfg.seed = 5;

    SUBCASE("edgeless graph sums to zero") {
        Graph g(40);
        DensityTriplesReport rep = check_density_triples(g, 0.5, cfg);
        REQUIRE(rep.rows.size() == 2);
        for (const RegimeStats& row : rep.rows) {
            CHECK(row.check == "density_triples");
            CHECK(row.feasible);
            CHECK(row.samples == 20);
            CHECK(row.violations == 0);
        }
    }
    SUBCASE("single pair in a complete graph lands at |Y| = 3") {
        Graph k = Graph::complete(40);
        cfg.ell_values = {1};
        DensityTriplesReport rep = check_density_triples(k, 1.0, cfg);
        REQUIRE(rep.rows.size() == 1);
        // ell = 1 <= 6 log 40, so the bound is 72 log 40 = 265.6 >= 3.
        CHECK(rep.rows[0].regime == "small_ell");
        CHECK(rep.rows[0].violations == 0);
    }
    SUBCASE("oversized families are reported infeasible") {
        Graph g(40);
        cfg.ell_values = {9};  // needs 5*9 = 45 > 40 vertices
        DensityTriplesReport rep = check_density_triples(g, 0.5, cfg);
        REQUIRE(rep.rows.size() == 1);
        CHECK(!rep.rows[0].feasible);
        CHECK(rep.rows[0].samples == 0);
    }
}

TEST_CASE("check_density_triples sweeps ell on a seeded random graph") {
    Graph g = sample_gnp({3000, 0.1, 17});
    PropCheckConfig cfg;
    cfg.trials = 200;
    cfg.ell_values = {10, 10000};
    cfg.seed = 17;

    DensityTriplesReport rep = check_density_triples(g, 0.1, cfg);
    REQUIRE(rep.rows.size() == 2);

    // ell = 10 <= 6 log n / p^2 = 4804: small regime, feasible.
    CHECK(rep.rows[0].regime == "small_ell");
    CHECK(rep.rows[0].feasible);
    CHECK(rep.rows[0].samples == 200);
    CHECK(rep.rows[0].violations == 0);

    // ell = 10^4 wants 5*10^4 vertices, far beyond n = 3000.
    CHECK(rep.rows[1].regime == "large_ell");
    CHECK(!rep.rows[1].feasible);
    CHECK(rep.rows[1].samples == 0);
}

TEST_CASE("check_tuples_expand hits the exact union on complete graphs") {
    Graph k = Graph::complete(60);
    PropCheckConfig cfg;
    cfg.trials = 25;
    cfg.seed = 6;

    // p = 1 forces t = 1 and N*(X, L) = L, the centre of the window.
    TuplesExpandReport rep = check_tuples_expand(k, 1.0, 2, cfg);
    CHECK(rep.stats.check == "tuples_expand");
    CHECK(rep.stats.feasible);
    CHECK(rep.stats.samples == 25);
    CHECK(rep.stats.violations == 0);
}

TEST_CASE("check_tuples_expand flags an edgeless graph declared dense") {
    Graph g(60);
    PropCheckConfig cfg;
    cfg.trials = 25;
    cfg.seed = 7;

    // Unions are empty, below the lower edge of the window every time.
    TuplesExpandReport rep = check_tuples_expand(g, 0.5, 2, cfg);
    CHECK(rep.stats.samples == 25);
    CHECK(rep.stats.violations == 25);

    CHECK_THROWS_AS(check_tuples_expand(g, 0.5, 0, cfg), std::invalid_argument);
}

TEST_CASE("check_tuples_expand stays inside the window on a seeded random graph") {
    Graph g = sample_gnp({20000, 0.1, 19});
    PropCheckConfig cfg;
    cfg.trials = 100;
    cfg.eps_tilde = 0.25;
    cfg.seed = 19;

    TuplesExpandReport rep = check_tuples_expand(g, 0.1, 2, cfg);
    CHECK(rep.stats.samples == 100);
    // The floor 50r log n / (eps p^2) = 3.96e6 dwarfs n = 20000, so L caps
    // at n/2 and the row says so.
    CHECK(rep.stats.capped);
    CHECK(rep.stats.params.find("capped") != std::string::npos);
    CHECK(rep.stats.fail_rate() < 0.05);
    // Frozen for seeds 19/19.
    CHECK(rep.stats.violations == 0);

    SUBCASE("same seed, same report") {
        TuplesExpandReport again = check_tuples_expand(g, 0.1, 2, cfg);
        CHECK(again.stats.violations == rep.stats.violations);
        CHECK(again.stats.params == rep.stats.params);
    }
}

TEST_CASE("run_prop_suite emits one CSV row per regime") {
    Graph g = sample_gnp({400, 0.2, 23});
    PropCheckConfig cfg;
    cfg.trials = 10;
    cfg.ell_values = {2, 5};
    cfg.seed = 23;

    std::vector<RegimeStats> rows = run_prop_suite(g, 0.2, 2, cfg);
    REQUIRE(rows.size() == 5);  // two density regimes, two ells, one expansion
    CHECK(rows[0].check == "density_xy");
    CHECK(rows[1].check == "density_xy");
    CHECK(rows[2].check == "density_triples");
    CHECK(rows[3].check == "density_triples");
    CHECK(rows[4].check == "tuples_expand");

    std::string csv = prop_rows_to_csv(rows);
    CHECK(csv.rfind("check,regime,parameters,samples,violations\n", 0) == 0);
    size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 6);
    // Params never smuggle a comma into the fixed five-column layout.
    for (const RegimeStats& row : rows) CHECK(row.params.find(',') == std::string::npos);
}
