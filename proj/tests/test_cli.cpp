// End-to-end tests of the dynmod command-line tool: pinned output bytes,
// exit codes, JSON mode, determinism, and pipe composition.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "dynmod/curve_system.hpp"
#include "dynmod/json_io.hpp"
#include "dynmod/portrait_graph.hpp"

using namespace dynmod;
using nlohmann::json;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    if (WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
    return r;
}

std::string cli() { return std::string(DYNMOD_CLI_PATH); }

std::string fix(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("cli: polynomial commands print pinned text") {
    RunResult r = run(cli() + " dynatomic 2");
    CHECK(r.status == 0);
    CHECK(r.out == "x1^2 + x1 + t + 1\n");

    r = run(cli() + " gen-dynatomic 1 2");
    CHECK(r.status == 0);
    CHECK(r.out == "x1^2 - x1 + t + 1\n");

    r = run(cli() + " branch-poly 0 1");
    CHECK(r.status == 0);
    CHECK(r.out == "-4*t + 1\n");

    r = run(cli() + " --json branch-poly 0 1");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j.at("rational_roots") == json::array({"1/4"}));
}

TEST_CASE("cli: verify-identities reports per-case lines") {
    RunResult r = run(cli() + " verify-identities --max-n 4 --max-m 1");
    CHECK(r.status == 0);
    CHECK(r.out.find("cycle N=4: ok") != std::string::npos);
    CHECK(r.out.find("preper M=1 N=4: ok") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli: classify and bounds match their documented examples") {
    RunResult r = run(cli() + " classify " + fix("ramified_fixed_chain.g"));
    CHECK(r.status == 0);
    CHECK(r.out == "NearlyAdmissible\n");

    r = run(cli() + " --json classify " + fix("ramified_fixed_chain.g"));
    CHECK(r.status == 0);
    CHECK(json::parse(r.out).at("kind") == "NearlyAdmissible");

    r = run(cli() + " bounds --deg 1");
    CHECK(r.status == 0);
    CHECK(r.out == "B = 24, period_bound(2,3) = 24\n");
}

TEST_CASE("cli: graph commands") {
    RunResult r = run(cli() + " gens " + fix("double_pair.g"));
    CHECK(r.status == 0);
    CHECK(r.out == "r (2,2) fresh\ns (2,2) attached kappa=1 j=1 lambda=2\n");

    r = run(cli() + " auto " + fix("double_pair.g"));
    CHECK(r.status == 0);
    CHECK(r.out == "8\n");

    r = run(cli() + " pi-degree " + fix("fixed_plus_three_4cycles.g"));
    CHECK(r.status == 0);
    CHECK(r.out == "768\n");

    r = run(cli() + " iso " + fix("single_3cycle.g") + " " + fix("single_3cycle.g"));
    CHECK(r.status == 0);
    CHECK(r.out == "isomorphic\n");

    r = run(cli() + " iso " + fix("single_2cycle.g") + " " + fix("single_3cycle.g"));
    CHECK(r.status == 0);
    CHECK(r.out == "not isomorphic\n");

    r = run(cli() + " normal-closure " + fix("single_3cycle.g"));
    CHECK(r.status == 0);
    PortraitGraph nc = PortraitGraph::parse(r.out);
    CHECK(nc.size() == 12);
    CHECK(nc.classify().kind == Classification::Kind::StronglyAdmissible);
}

TEST_CASE("cli: preper prints an orbit table that is itself valid graph DSL") {
    RunResult r = run(cli() + " preper -29/16");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("# c = -29/16\n# 8 preperiodic points\n", 0) == 0);
    PortraitGraph g = PortraitGraph::parse(r.out);
    CHECK(g.size() == 8);
    CHECK(g.classify().kind == Classification::Kind::StronglyAdmissible);

    // ... so it composes with the graph commands through a pipe.
    RunResult piped = run(cli() + " preper -29/16 | " + cli() + " classify /dev/stdin");
    CHECK(piped.status == 0);
    CHECK(piped.out == "StronglyAdmissible\n");
}

TEST_CASE("cli: pcf-scan lists the integral parameters in order") {
    RunResult r = run(cli() + " pcf-scan --max-m 2 --max-n 2");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "c = -2: portrait (2,1), strictly preperiodic critical orbit\n"
          "c = -1: portrait (0,2), periodic critical orbit\n"
          "c = 0: portrait (0,1), periodic critical orbit\n");
}

TEST_CASE("cli: fiber lists rational points over the parameter") {
    RunResult r = run(cli() + " fiber " + fix("single_3cycle.g") + " -29/16");
    CHECK(r.status == 0);
    CHECK(r.out == "(-7/4)\n(-1/4)\n(5/4)\n");

    r = run(cli() + " fiber " + fix("two_3cycles.g") + " -29/16");
    CHECK(r.status == 0);
    CHECK(r.out.empty());
}

TEST_CASE("cli: curve output pipes into check-point") {
    std::string curve = cli() + " --json curve " + fix("single_3cycle.g");
    std::string check = cli() + " check-point --stdin";

    RunResult on = run(curve + " | " + check + " -7/4 -29/16");
    CHECK(on.status == 0);
    CHECK(on.out == "OnU1\n");

    RunResult off = run(curve + " | " + check + " 1/4 -29/16");
    CHECK(off.status == 0);
    CHECK(off.out == "NotOnYG\n");

    std::string curve2 = cli() + " --json curve " + fix("two_3cycles.g");
    RunResult shifted = run(curve2 + " | " + cli() + " check-point --stdin -7/4 -7/4 -29/16");
    CHECK(shifted.status == 0);
    CHECK(shifted.out == "OnYGOnly\n");

    // The pipeline agrees with the in-process classification.
    CurveSystem sys = curve_system(PortraitGraph::parse(
        run("cat " + fix("single_3cycle.g")).out));
    Rational c = parse_rational("-29/16");
    CHECK(point_class_name(check_point(sys, {parse_rational("-7/4"), c})) + "\n" == on.out);
    CHECK(point_class_name(check_point(sys, {parse_rational("1/4"), c})) + "\n" == off.out);
}

TEST_CASE("cli: identical invocations are byte-identical") {
    for (const std::string& cmd :
         {cli() + " --json curve " + fix("two_3cycles.g"), cli() + " --json preper -29/16",
          cli() + " curve " + fix("cycle2_arm33.g"), cli() + " --json gens " + fix("double_pair.g")}) {
        RunResult a = run(cmd);
        RunResult b = run(cmd);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("cli: exit codes separate usage errors from domain errors") {
    CHECK(run(cli() + " frobnicate").status == 2);
    CHECK(run(cli()).status == 2);
    CHECK(run(cli() + " dynatomic").status == 2);
    CHECK(run(cli() + " dynatomic 2 3").status == 2);
    CHECK(run(cli() + " --max-degree zero dynatomic 2").status == 2);

    CHECK(run(cli() + " dynatomic 0").status == 1);
    CHECK(run(cli() + " classify /nonexistent/graph.g").status == 1);
    CHECK(run(cli() + " --max-degree 100 dynatomic 10").status == 1);
    CHECK(run(cli() + " pi-degree " + fix("ramified_fixed_chain.g")).status == 1);

    RunResult err = run(cli() + " --json dynatomic 0");
    CHECK(err.status == 1);
    json j = json::parse(err.out);
    CHECK(j.contains("error"));
}
