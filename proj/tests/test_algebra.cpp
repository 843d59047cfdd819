// Exact algebra layer: rationals, integer helpers, sparse multivariate
// polynomials, dense univariate polynomials, resultants.

#include <catch2/catch_amalgamated.hpp>

#include "dynmod/multipoly.hpp"
#include "dynmod/numeric.hpp"
#include "dynmod/rational.hpp"
#include "dynmod/resultant.hpp"
#include "dynmod/unipoly.hpp"

using namespace dynmod;

TEST_CASE("rational parsing and printing normalize") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK(to_string(parse_rational("-29/16")) == "-29/16");
    CHECK(to_string(parse_rational("5")) == "5");
    CHECK(parse_rational("1/2") == make_rational(2, 4));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational(""));
}

TEST_CASE("integer helpers") {
    CHECK(is_perfect_square(Integer(16)));
    CHECK_FALSE(is_perfect_square(Integer(17)));
    CHECK(exact_sqrt(Integer(144)) == 12);
    CHECK(pow_integer(Integer(3), 5) == 243);
    CHECK(abs_rational(parse_rational("-3/2")) == parse_rational("3/2"));

    auto f = factorize(Integer(360));
    REQUIRE(f.size() == 3);
    CHECK((f[0].first == 2 && f[0].second == 3));
    CHECK((f[1].first == 3 && f[1].second == 2));
    CHECK((f[2].first == 5 && f[2].second == 1));
}

TEST_CASE("mobius, divisors and the degree formulas") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(6) == 1);
    CHECK(mobius(30) == -1);
    CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});

    // Sum over divisors of the degree formula recovers 2^N exactly.
    for (long N = 1; N <= 12; ++N) {
        long long total = 0;
        for (long d : divisors(N)) total += period_degree(d);
        CHECK(total == (1LL << N));
        CHECK(period_degree(N) % N == 0);
        CHECK(cycle_count_bound(N) == period_degree(N) / N);
    }
}

TEST_CASE("multivariate arithmetic and term order") {
    MultiPoly x = MultiPoly::variable("x1");
    MultiPoly t = MultiPoly::variable("t");
    MultiPoly p = (x * x + t) * (x * x + t) + t - x;  // f^2(x) - x
    CHECK(p.to_text() == "x1^4 + 2*t*x1^2 - x1 + t^2 + t");

    MultiPoly y = MultiPoly::variable("x2");
    // Terms in descending monomial order (x2 most significant); factors inside
    // a term in ascending variable order, matching "2*t*x1^2" style output.
    CHECK(((x + y) * (x + y)).to_text() == "x2^2 + 2*x1*x2 + x1^2");
    CHECK((x - x).to_text() == "0");
    CHECK(MultiPoly::constant(Integer(-3)).to_text() == "-3");
}

TEST_CASE("multivariate text and json round-trips") {
    MultiPoly x = MultiPoly::variable("x1");
    MultiPoly t = MultiPoly::variable("t");
    std::vector<MultiPoly> samples = {
        MultiPoly::zero(),
        MultiPoly::constant(Integer(-7)),
        x,
        (x * x + t) * (x * x + t) + t - x,
        x * t * t - MultiPoly::constant(Integer(2)) * x + MultiPoly::constant(Integer(5)),
    };
    for (const MultiPoly& p : samples) {
        CHECK(MultiPoly::from_text(p.to_text()) == p);
        CHECK(MultiPoly::from_json(p.to_json()) == p);
    }
}

TEST_CASE("exact division is inverse to multiplication") {
    MultiPoly x = MultiPoly::variable("x1");
    MultiPoly t = MultiPoly::variable("t");
    std::vector<std::pair<MultiPoly, MultiPoly>> cases = {
        {x * x + x + t + MultiPoly::constant(Integer(1)), x * x - x + t},
        {x + t, x * x * x + t * t},
        {MultiPoly::constant(Integer(3)) * x + t, x - t},
    };
    for (const auto& [p, q] : cases) {
        CHECK(divexact(p * q, q) == p);
        CHECK(divexact(p * q, p) == q);
    }
    // Non-exact division is an error, not a truncation.
    CHECK_THROWS(divexact(x * x + MultiPoly::constant(Integer(1)),
                          x + MultiPoly::constant(Integer(1))));
}

TEST_CASE("evaluation is a ring homomorphism") {
    MultiPoly x = MultiPoly::variable("x1");
    MultiPoly t = MultiPoly::variable("t");
    MultiPoly p = x * x * t - x + MultiPoly::constant(Integer(3));
    MultiPoly q = t * t + x;
    std::map<std::string, Rational> at{{"x1", parse_rational("-5/4")}, {"t", parse_rational("2/3")}};
    CHECK((p * q).eval(at) == p.eval(at) * q.eval(at));
    CHECK((p + q).eval(at) == p.eval(at) + q.eval(at));
    CHECK((p - q).eval(at) == p.eval(at) - q.eval(at));
}

TEST_CASE("substitution composes") {
    MultiPoly x = MultiPoly::variable("x1");
    MultiPoly t = MultiPoly::variable("t");
    MultiPoly p = x * x + t;
    MultiPoly shifted = substitute(p, "x1", x + MultiPoly::constant(Integer(1)));
    CHECK(shifted.to_text() == "x1^2 + 2*x1 + t + 1");
    // Substituting -x1 twice is the identity.
    MultiPoly neg = substitute(p, "x1", MultiPoly::zero() - x);
    CHECK(substitute(neg, "x1", MultiPoly::zero() - x) == p);
    std::map<std::string, Rational> at{{"x1", parse_rational("1/2")}, {"t", parse_rational("-2")}};
    std::map<std::string, Rational> at_shift{{"x1", parse_rational("3/2")}, {"t", parse_rational("-2")}};
    CHECK(shifted.eval(at) == p.eval(at_shift));
}

TEST_CASE("renamed variables") {
    MultiPoly x = MultiPoly::variable("x1");
    MultiPoly t = MultiPoly::variable("t");
    MultiPoly p = x * x + x + t;
    MultiPoly r = p.renamed("x1", "x3");
    CHECK(r.to_text() == "x3^2 + x3 + t");
    CHECK(r.degree("x1") == 0);
    CHECK(r.degree("x3") == 2);
}

TEST_CASE("univariate gcd, squarefree part, rational roots") {
    // (2x - 1)(x + 3)^2 (x^2 + 1)
    UniPoly a = UniPoly({parse_rational("-1"), parse_rational("2")});
    UniPoly b = UniPoly({parse_rational("3"), parse_rational("1")});
    UniPoly c = UniPoly({parse_rational("1"), parse_rational("0"), parse_rational("1")});
    UniPoly p = a * b * b * c;

    auto [sf, was_sf] = p.squarefree_part();
    CHECK_FALSE(was_sf);
    auto [sf2, was_sf2] = sf.squarefree_part();
    CHECK(was_sf2);
    CHECK(sf2 == sf);
    CHECK(sf.degree() == 4);  // one copy of each distinct factor

    std::vector<Rational> roots = p.rational_roots();
    std::sort(roots.begin(), roots.end());
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == parse_rational("-3"));
    CHECK(roots[1] == parse_rational("1/2"));

    UniPoly g = gcd(p, p.derivative());
    CHECK(g.degree() == 1);  // the repeated factor (x + 3)
}

TEST_CASE("resultant and discriminant oracles") {
    MultiPoly x = MultiPoly::variable("x1");
    MultiPoly t = MultiPoly::variable("t");

    // res_x(x^2 - t, x - 2) = f(2) = 4 - t.
    CHECK(resultant(x * x - t, x - MultiPoly::constant(Integer(2)), "x1").to_text() == "-t + 4");

    // disc_x(x^2 - x + t) = 1 - 4t.
    CHECK(discriminant(x * x - x + t, "x1").to_text() == "-4*t + 1");

    // disc_x(x^2 + x + (t+1)) = 1 - 4(t+1) = -4t - 3.
    MultiPoly phi2 = x * x + x + t + MultiPoly::constant(Integer(1));
    CHECK(discriminant(phi2, "x1").to_text() == "-4*t - 3");

    // Multiplicativity: res(fg, h) = res(f, h) * res(g, h) for monic-in-x inputs.
    MultiPoly f = x * x - t;
    MultiPoly g = x + t;
    MultiPoly h = x - MultiPoly::constant(Integer(3));
    CHECK(resultant(f * g, h, "x1") == resultant(f, h, "x1") * resultant(g, h, "x1"));

    CHECK_THROWS(discriminant(t, "x1"));
}
