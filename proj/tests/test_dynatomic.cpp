// Dynatomic polynomials: construction, degree bookkeeping, the defining
// factorizations, specialization and branch polynomials.

#include <catch2/catch_amalgamated.hpp>

#include "dynmod/dynatomic.hpp"

using namespace dynmod;

TEST_CASE("degree table for N = 1..10") {
    std::vector<long long> D = {2, 2, 6, 12, 30, 54, 126, 240, 504, 990};
    std::vector<long long> R = {2, 1, 2, 3, 6, 9, 18, 30, 56, 99};
    for (long N = 1; N <= 10; ++N) {
        CHECK(period_degree(N) == D[static_cast<std::size_t>(N - 1)]);
        CHECK(cycle_count_bound(N) == R[static_cast<std::size_t>(N - 1)]);
    }
}

TEST_CASE("iterates of x^2 + t") {
    CHECK(iterate_poly(0).to_text() == "x1");
    CHECK(iterate_poly(1).to_text() == "x1^2 + t");
    CHECK(iterate_poly(2).to_text() == "x1^4 + 2*t*x1^2 + t^2 + t");
    CHECK(iterate_poly(3).degree("x1") == 8);
}

TEST_CASE("dynatomic byte oracles") {
    CHECK(dynatomic(1).phi.to_text() == "x1^2 - x1 + t");
    CHECK(dynatomic(2).phi.to_text() == "x1^2 + x1 + t + 1");
    CHECK(gen_dynatomic(1, 1).to_text() == "x1^2 + x1 + t");
    CHECK(gen_dynatomic(1, 2).to_text() == "x1^2 - x1 + t + 1");
    CHECK(gen_dynatomic(2, 1).to_text() == "x1^4 + 2*t*x1^2 + x1^2 + t^2 + 2*t");
    CHECK(gen_dynatomic(0, 2) == dynatomic(2).phi);
}

TEST_CASE("actual degrees match the formulas") {
    for (long N = 1; N <= 6; ++N) {
        DynatomicTable tab = dynatomic(N);
        CHECK(tab.phi.degree("x1") == period_degree(N));
        CHECK(tab.phi.degree("t") == period_degree(N) / 2);
        CHECK(tab.degree_x == period_degree(N));
        CHECK(tab.cycle_count == cycle_count_bound(N));
    }
    for (long M = 0; M <= 3; ++M) {
        for (long N = 1; N <= 3; ++N) {
            long long expect = (M >= 1 ? (1LL << (M - 1)) : 1) * period_degree(N);
            CHECK(gen_dynatomic_degree(M, N) == expect);
            MultiPoly phi = gen_dynatomic(M, N);
            CHECK(phi.degree("x1") == expect);
            CHECK(phi.degree("t") == expect / 2);
        }
    }
}

TEST_CASE("substitution form equals the quotient definition") {
    for (long M = 1; M <= 2; ++M)
        for (long N = 1; N <= 3; ++N)
            CHECK(gen_dynatomic(M, N) == gen_dynatomic_quotient(M, N));
}

TEST_CASE("cycle and preperiodic factorizations") {
    for (long N = 1; N <= 6; ++N) CHECK(verify_cycle_factorization(N));
    for (long M = 1; M <= 2; ++M)
        for (long N = 1; N <= 2; ++N) CHECK(verify_preper_factorization(M, N));
}

TEST_CASE("specialization to a rational parameter") {
    // At c = -1 the 2-cycle is {0, -1}.
    UniPoly at_m1 = specialize(0, 2, parse_rational("-1"));
    auto roots = at_m1.rational_roots();
    std::sort(roots.begin(), roots.end());
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == parse_rational("-1"));
    CHECK(roots[1] == parse_rational("0"));

    // At the collision parameter c = -3/4 the period-2 polynomial acquires a
    // double root: formal period 2, exact period 1.
    UniPoly collide = specialize(0, 2, parse_rational("-3/4"));
    auto [sf, was_squarefree] = collide.squarefree_part();
    CHECK_FALSE(was_squarefree);
    auto sf_roots = sf.rational_roots();
    REQUIRE(sf_roots.size() == 1);
    CHECK(sf_roots[0] == parse_rational("-1/2"));
}

TEST_CASE("branch polynomials and their rational roots") {
    MultiPoly b1 = branch_poly(0, 1);
    CHECK(b1.to_text() == "-4*t + 1");
    auto r1 = UniPoly::from_multipoly(b1, "t").rational_roots();
    REQUIRE(r1.size() == 1);
    CHECK(r1[0] == parse_rational("1/4"));

    MultiPoly b2 = branch_poly(0, 2);
    CHECK(b2.to_text() == "-4*t - 3");
    auto r2 = UniPoly::from_multipoly(b2, "t").rational_roots();
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == parse_rational("-3/4"));
}

TEST_CASE("degree cap is enforced") {
    CHECK_THROWS_AS(dynatomic(20, 64), std::domain_error);
    CHECK_THROWS_AS(gen_dynatomic(8, 8, 64), std::domain_error);
    CHECK_THROWS_AS(dynatomic(0), std::domain_error);
    CHECK_THROWS_AS(gen_dynatomic(-1, 2), std::domain_error);
}
