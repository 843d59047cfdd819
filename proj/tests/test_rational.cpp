// Rational dynamics of x^2 + c: exhaustive preperiodic sets, the PCF
// dichotomy, parameter scans and the numeric bounds.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "dynmod/dynatomic.hpp"
#include "dynmod/rational_dynamics.hpp"

using namespace dynmod;

namespace {

PortraitGraph fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return PortraitGraph::parse(buf.str());
}

}  // namespace

TEST_CASE("preperiodic set at c = -29/16") {
    RationalPreperSet pre = preper_set(parse_rational("-29/16"));
    REQUIRE(pre.points.size() == 8);
    std::vector<std::string> expect = {"-7/4", "-5/4", "-3/4", "-1/4", "1/4", "3/4", "5/4", "7/4"};
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(to_string(pre.points[i].point) == expect[i]);

    std::map<std::string, Portrait> portraits;
    for (const OrbitRecord& rec : pre.points) portraits[to_string(rec.point)] = rec.portrait;
    CHECK(portraits["-1/4"] == (Portrait{0, 3}));
    CHECK(portraits["-7/4"] == (Portrait{0, 3}));
    CHECK(portraits["5/4"] == (Portrait{0, 3}));
    CHECK(portraits["1/4"] == (Portrait{1, 3}));
    CHECK(portraits["7/4"] == (Portrait{1, 3}));
    CHECK(portraits["-5/4"] == (Portrait{1, 3}));
    CHECK(portraits["3/4"] == (Portrait{2, 3}));
    CHECK(portraits["-3/4"] == (Portrait{2, 3}));

    Classification c = pre.graph.classify();
    CHECK(c.kind == Classification::Kind::StronglyAdmissible);
    REQUIRE(pre.graph.cycles().size() == 1);
    CHECK(pre.graph.cycles()[0].size() == 3);

    // The graph equals the shipped fixture, point names and all.
    CHECK(pre.graph == fixture("cycle3_level1_pair.g"));

    // Each point is a root of its generalized dynatomic polynomial.
    for (const OrbitRecord& rec : pre.points) {
        UniPoly phi = specialize(rec.portrait.preperiod, rec.portrait.period, pre.c);
        CHECK(phi.eval(rec.point) == 0);
    }
}

TEST_CASE("preperiodic sets at small parameters") {
    RationalPreperSet p0 = preper_set(Rational(0));
    REQUIRE(p0.points.size() == 3);  // -1, 0, 1
    CHECK(p0.graph.classify().kind == Classification::Kind::NearlyAdmissible);

    RationalPreperSet p1 = preper_set(parse_rational("-1"));
    REQUIRE(p1.points.size() == 3);  // 0 <-> -1 with 1 above
    std::map<std::string, Portrait> ports;
    for (const auto& rec : p1.points) ports[to_string(rec.point)] = rec.portrait;
    CHECK(ports["0"] == (Portrait{0, 2}));
    CHECK(ports["-1"] == (Portrait{0, 2}));
    CHECK(ports["1"] == (Portrait{1, 2}));
    CHECK(p1.graph.classify().kind == Classification::Kind::NearlyAdmissible);

    RationalPreperSet p2 = preper_set(parse_rational("-2"));
    REQUIRE(p2.points.size() == 5);  // -2, -1, 0, 1, 2
    CHECK(p2.graph.classify().kind == Classification::Kind::NearlyAdmissible);

    RationalPreperSet pq = preper_set(parse_rational("1/4"));
    REQUIRE(pq.points.size() == 2);  // +-1/2
    CHECK(pq.graph.classify().kind == Classification::Kind::Admissible);

    CHECK(preper_set(parse_rational("1")).points.empty());
    CHECK(preper_set(parse_rational("1/2")).points.empty());
    // Non-square denominator: no preperiodic rationals at all.
    CHECK(preper_set(parse_rational("1/3")).points.empty());
    CHECK(preper_set(parse_rational("-7/3")).points.empty());
}

TEST_CASE("escape test and skipped candidates are truly wandering") {
    Rational c = parse_rational("-29/16");
    CHECK(escapes(parse_rational("2"), c));
    CHECK_FALSE(escapes(parse_rational("1/4"), c));

    // Candidates with the wrong denominator never come back.
    for (const std::string& s : {"0", "1", "-1", "1/2", "-3/2", "5/2"}) {
        auto r = detail::classify_orbit(parse_rational(s), c, Integer(4));
        CHECK(r.kind != detail::OrbitKind::Preperiodic);
    }
}

TEST_CASE("pcf certificates") {
    PcfCertificate a = is_pcf(Rational(0));
    CHECK(a.pcf);
    CHECK(a.portrait == (Portrait{0, 1}));

    PcfCertificate b = is_pcf(parse_rational("-1"));
    CHECK(b.pcf);
    CHECK(b.portrait == (Portrait{0, 2}));

    PcfCertificate d = is_pcf(parse_rational("-2"));
    CHECK(d.pcf);
    CHECK(d.portrait == (Portrait{2, 1}));

    PcfCertificate e = is_pcf(parse_rational("1/4"));
    CHECK_FALSE(e.pcf);
    CHECK(e.reason == "denominator");

    PcfCertificate f = is_pcf(parse_rational("3"));
    CHECK_FALSE(f.pcf);
    CHECK(f.reason == "escape");
    CHECK_FALSE(f.orbit.empty());
}

TEST_CASE("pcf parameter scan finds exactly the three rational parameters") {
    auto found = pcf_parameters(2, 2, kDefaultDegreeCap);
    REQUIRE(found.size() == 3);
    CHECK(to_string(found[0].c) == "-2");
    CHECK(found[0].portrait == (Portrait{2, 1}));
    CHECK_FALSE(found[0].periodic_zero);
    CHECK(to_string(found[1].c) == "-1");
    CHECK(found[1].portrait == (Portrait{0, 2}));
    CHECK(found[1].periodic_zero);
    CHECK(to_string(found[2].c) == "0");
    CHECK(found[2].portrait == (Portrait{0, 1}));
    CHECK(found[2].periodic_zero);

    // Enlarging the window finds nothing new over the rationals.
    auto wider = pcf_parameters(3, 3, kDefaultDegreeCap);
    CHECK(wider.size() == 3);
}

TEST_CASE("pcf dichotomy on sampled parameters") {
    // PCF parameters give nearly admissible graphs; everything else sampled
    // gives an admissible (or stronger) graph.
    for (const std::string& s : {"0", "-1", "-2"})
        CHECK(preper_set(parse_rational(s)).graph.classify().kind ==
              Classification::Kind::NearlyAdmissible);

    std::mt19937 rng(20240817u);
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 8);
    int tested = 0;
    while (tested < 25) {
        Rational c = make_rational(num(rng), den(rng));
        if (c == 0 || c == -1 || c == -2) continue;
        ++tested;
        CHECK(preper_set(c).graph.classify().admissible_or_stronger());
    }
}

TEST_CASE("no small-denominator rational cycles of length 4 or 5") {
    // Scan candidate parameters and confirm no rational point has eventual
    // period 4 or 5 (consistent with the known classification).
    for (long bn = -30; bn <= 10; ++bn) {
        for (long bd : {1L, 4L, 16L}) {
            Rational c = make_rational(bn, bd);
            for (const OrbitRecord& rec : preper_set(c).points) {
                CHECK(rec.portrait.period != 4);
                CHECK(rec.portrait.period != 5);
            }
        }
    }
}

TEST_CASE("period bound") {
    PeriodBoundResult pb = period_bound(Integer(2), Integer(3));
    CHECK(pb.bound == 24);
    CHECK(pb.hypothesis_ok);

    PeriodBoundResult pb2 = period_bound(Integer(3), Integer(5));
    CHECK(pb2.bound == 192);
    CHECK(pb2.hypothesis_ok);

    // Same residue characteristic: the formula still evaluates but the
    // hypothesis flag goes down.
    PeriodBoundResult same = period_bound(Integer(2), Integer(4));
    CHECK_FALSE(same.hypothesis_ok);

    // A non prime power is not a residue norm.
    PeriodBoundResult bad = period_bound(Integer(6), Integer(5));
    CHECK_FALSE(bad.hypothesis_ok);
}

TEST_CASE("realization bound") {
    CHECK(realize_bound(1) == 24);
    CHECK(realize_bound(2) == 1200);
    CHECK(realize_bound(6) == Integer("2176246800"));
    CHECK_THROWS(realize_bound(0));
}
