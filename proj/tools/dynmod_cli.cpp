// dynmod: command-line front end for the dynmod headers.
//
// Exit codes: 0 success, 1 domain error (bad mathematical input, missing
// file, cap exceeded), 2 usage error.  Data goes to stdout, diagnostics to
// stderr.  With --json every command emits a single JSON object with sorted
// keys, so identical invocations are byte-identical.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dynmod/curve_system.hpp"
#include "dynmod/dynatomic.hpp"
#include "dynmod/generators.hpp"
#include "dynmod/json_io.hpp"
#include "dynmod/level_structures.hpp"
#include "dynmod/portrait_graph.hpp"
#include "dynmod/rational_dynamics.hpp"

namespace {

using namespace dynmod;
using nlohmann::json;

const char kUsage[] =
    R"(usage: dynmod [--json] [--max-degree CAP] [--seed S] COMMAND [ARGS]

polynomial commands
  dynatomic N                 dynatomic polynomial of period N in x1, t
  gen-dynatomic M N           generalized dynatomic polynomial of portrait (M,N)
  branch-poly M N             discriminant in x1 of the (M,N) polynomial, in t
  verify-identities --max-n K [--max-m M]
                              check the cycle factorizations for n <= K (and,
                              with --max-m, the preperiodic factorizations)

rational dynamics commands
  preper C                    preperiodic points of x^2 + C over Q; prints an
                              orbit table (as comments) and the graph DSL
  pcf-scan --max-m M --max-n N
                              rational parameters whose critical orbit is
                              finite with portrait within (M,N)
  bounds --deg D [--primes P Q]
                              realization bound B for degree D and the period
                              bound for a pair of prime residue norms

graph commands (GRAPH is a file of "u -> v" lines; '#' starts a comment)
  classify GRAPH              admissibility class of the graph
  gens GRAPH                  canonical minimal generating set with attachment data
  auto GRAPH                  order of the automorphism group
  normal-closure GRAPH        smallest normal graph containing GRAPH, as DSL
  iso GRAPH1 GRAPH2           whether GRAPH1 maps onto GRAPH2 by a
                              (near-)isomorphism of its generators

curve commands
  curve GRAPH                 defining equations and open conditions of the
                              marked curve for GRAPH
  pi-degree GRAPH             degree of the projection of that curve to the
                              parameter line
  fiber GRAPH C               rational points of the curve over parameter C
  check-point (CURVE.json | --stdin) X1 .. XN C
                              classify a point against a curve system produced
                              by `curve --json`

global flags
  --json                      machine-readable output (sorted keys)
  --max-degree CAP            polynomial degree cap (default 1024)
  --seed S                    seed for randomized modes (reserved)
)";

struct UsageError {
    std::string message;
};

struct Options {
    bool json = false;
    long cap = kDefaultDegreeCap;
    unsigned long seed = 0;
    std::vector<std::string> args;  // subcommand followed by its arguments
};

long parse_long(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(s, &used);
    } catch (const std::exception&) {
        throw UsageError{what + ": expected an integer, got '" + s + "'"};
    }
    if (used != s.size()) throw UsageError{what + ": expected an integer, got '" + s + "'"};
    return value;
}

Options parse_options(int argc, char** argv) {
    Options opt;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--json") {
            opt.json = true;
        } else if (a == "--max-degree") {
            if (i + 1 >= argc) throw UsageError{"--max-degree needs a value"};
            opt.cap = parse_long(argv[++i], "--max-degree");
            if (opt.cap < 1) throw UsageError{"--max-degree must be positive"};
        } else if (a == "--seed") {
            if (i + 1 >= argc) throw UsageError{"--seed needs a value"};
            opt.seed = static_cast<unsigned long>(parse_long(argv[++i], "--seed"));
        } else if (a == "--help" || a == "-h") {
            throw UsageError{""};
        } else {
            opt.args.push_back(std::move(a));
        }
    }
    return opt;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PortraitGraph load_graph(const std::string& path) {
    return PortraitGraph::parse(read_file(path));
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::string portrait_text(const Portrait& p) {
    return "(" + std::to_string(p.preperiod) + "," + std::to_string(p.period) + ")";
}

std::string generator_line(const PortraitGraph& g, const GeneratorEntry& e) {
    std::string line = g.name(e.vertex) + " " + portrait_text(e.portrait);
    if (e.attached) {
        line += " attached kappa=" + std::to_string(e.kappa) + " j=" + std::to_string(e.j) +
                " lambda=" + std::to_string(e.lambda);
    } else {
        line += " fresh";
    }
    return line;
}

// ---- subcommands ------------------------------------------------------------

int cmd_dynatomic(const Options& opt) {
    if (opt.args.size() != 2) throw UsageError{"dynatomic takes one argument: N"};
    long n = parse_long(opt.args[1], "N");
    DynatomicTable tab = dynatomic(n, opt.cap);
    if (opt.json) {
        json j;
        j["N"] = tab.n;
        j["cycle_count"] = tab.cycle_count;
        j["degree_x"] = tab.degree_x;
        j["poly"] = tab.phi.to_json();
        emit(j);
    } else {
        std::cout << tab.phi.to_text() << "\n";
    }
    return 0;
}

int cmd_gen_dynatomic(const Options& opt) {
    if (opt.args.size() != 3) throw UsageError{"gen-dynatomic takes two arguments: M N"};
    long m = parse_long(opt.args[1], "M");
    long n = parse_long(opt.args[2], "N");
    MultiPoly phi = gen_dynatomic(m, n, opt.cap);
    if (opt.json) {
        json j;
        j["M"] = m;
        j["N"] = n;
        j["degree_x"] = gen_dynatomic_degree(m, n);
        j["poly"] = phi.to_json();
        emit(j);
    } else {
        std::cout << phi.to_text() << "\n";
    }
    return 0;
}

int cmd_branch_poly(const Options& opt) {
    if (opt.args.size() != 3) throw UsageError{"branch-poly takes two arguments: M N"};
    long m = parse_long(opt.args[1], "M");
    long n = parse_long(opt.args[2], "N");
    MultiPoly b = branch_poly(m, n, opt.cap);
    if (opt.json) {
        UniPoly u = UniPoly::from_multipoly(b, "t");
        std::vector<Rational> roots = u.rational_roots();
        std::sort(roots.begin(), roots.end());
        json j;
        j["M"] = m;
        j["N"] = n;
        j["poly"] = b.to_json();
        json r = json::array();
        for (const Rational& x : roots) r.push_back(to_string(x));
        j["rational_roots"] = r;
        emit(j);
    } else {
        std::cout << b.to_text() << "\n";
    }
    return 0;
}

int cmd_verify_identities(const Options& opt) {
    long max_n = -1, max_m = 0;
    for (std::size_t i = 1; i < opt.args.size(); ++i) {
        if (opt.args[i] == "--max-n" && i + 1 < opt.args.size()) {
            max_n = parse_long(opt.args[++i], "--max-n");
        } else if (opt.args[i] == "--max-m" && i + 1 < opt.args.size()) {
            max_m = parse_long(opt.args[++i], "--max-m");
        } else {
            throw UsageError{"verify-identities: unexpected argument '" + opt.args[i] + "'"};
        }
    }
    if (max_n < 1) throw UsageError{"verify-identities needs --max-n K with K >= 1"};
    bool all_ok = true;
    json cycle = json::array(), preper = json::array();
    std::ostringstream text;
    for (long n = 1; n <= max_n; ++n) {
        bool ok = verify_cycle_factorization(n, opt.cap);
        all_ok = all_ok && ok;
        cycle.push_back(json{{"N", n}, {"ok", ok}});
        text << "cycle N=" << n << ": " << (ok ? "ok" : "FAIL") << "\n";
    }
    for (long m = 1; m <= max_m; ++m) {
        for (long n = 1; n <= max_n; ++n) {
            bool ok = verify_preper_factorization(m, n, opt.cap);
            all_ok = all_ok && ok;
            preper.push_back(json{{"M", m}, {"N", n}, {"ok", ok}});
            text << "preper M=" << m << " N=" << n << ": " << (ok ? "ok" : "FAIL") << "\n";
        }
    }
    if (opt.json) {
        json j;
        j["cycle"] = cycle;
        j["preper"] = preper;
        j["ok"] = all_ok;
        emit(j);
    } else {
        std::cout << text.str();
    }
    return all_ok ? 0 : 1;
}

int cmd_preper(const Options& opt) {
    if (opt.args.size() != 2) throw UsageError{"preper takes one argument: C"};
    Rational c = parse_rational(opt.args[1]);
    RationalPreperSet pre = preper_set(c);
    if (opt.json) {
        json pts = json::array();
        for (const OrbitRecord& rec : pre.points) {
            json orbit = json::array();
            for (const Rational& x : rec.orbit) orbit.push_back(to_string(x));
            pts.push_back(json{{"point", to_string(rec.point)},
                               {"preperiod", rec.portrait.preperiod},
                               {"period", rec.portrait.period},
                               {"orbit", orbit}});
        }
        json j;
        j["c"] = to_string(pre.c);
        j["count"] = pre.points.size();
        j["points"] = pts;
        j["graph"] = graph_to_json(pre.graph);
        emit(j);
    } else {
        // The whole output is valid graph DSL: the table rides in comments.
        std::cout << "# c = " << to_string(pre.c) << "\n";
        std::cout << "# " << pre.points.size() << " preperiodic points\n";
        for (const OrbitRecord& rec : pre.points) {
            std::cout << "# " << to_string(rec.point) << ": portrait "
                      << portrait_text(rec.portrait) << ", orbit ";
            for (std::size_t i = 0; i < rec.orbit.size(); ++i) {
                if (i) std::cout << " -> ";
                std::cout << to_string(rec.orbit[i]);
            }
            std::cout << "\n";
        }
        std::cout << pre.graph.serialize();
    }
    return 0;
}

int cmd_pcf_scan(const Options& opt) {
    long max_m = -1, max_n = -1;
    for (std::size_t i = 1; i < opt.args.size(); ++i) {
        if (opt.args[i] == "--max-m" && i + 1 < opt.args.size()) {
            max_m = parse_long(opt.args[++i], "--max-m");
        } else if (opt.args[i] == "--max-n" && i + 1 < opt.args.size()) {
            max_n = parse_long(opt.args[++i], "--max-n");
        } else {
            throw UsageError{"pcf-scan: unexpected argument '" + opt.args[i] + "'"};
        }
    }
    if (max_m < 0 || max_n < 1)
        throw UsageError{"pcf-scan needs --max-m M (M >= 0) and --max-n N (N >= 1)"};
    std::vector<PcfParameter> found = pcf_parameters(max_m, max_n, opt.cap);
    if (opt.json) {
        json arr = json::array();
        for (const PcfParameter& p : found)
            arr.push_back(json{{"c", to_string(p.c)},
                               {"preperiod", p.portrait.preperiod},
                               {"period", p.portrait.period},
                               {"periodic_zero", p.periodic_zero}});
        json j;
        j["count"] = found.size();
        j["parameters"] = arr;
        emit(j);
    } else {
        for (const PcfParameter& p : found) {
            std::cout << "c = " << to_string(p.c) << ": portrait " << portrait_text(p.portrait)
                      << (p.periodic_zero ? ", periodic critical orbit"
                                          : ", strictly preperiodic critical orbit")
                      << "\n";
        }
    }
    return 0;
}

int cmd_bounds(const Options& opt) {
    long deg = -1;
    Integer p = 2, q = 3;
    for (std::size_t i = 1; i < opt.args.size(); ++i) {
        if (opt.args[i] == "--deg" && i + 1 < opt.args.size()) {
            deg = parse_long(opt.args[++i], "--deg");
        } else if (opt.args[i] == "--primes" && i + 2 < opt.args.size()) {
            p = Integer(parse_long(opt.args[++i], "--primes"));
            q = Integer(parse_long(opt.args[++i], "--primes"));
        } else {
            throw UsageError{"bounds: unexpected argument '" + opt.args[i] + "'"};
        }
    }
    if (deg < 1) throw UsageError{"bounds needs --deg D with D >= 1"};
    Integer b = realize_bound(deg);
    PeriodBoundResult pb = period_bound(p, q);
    if (opt.json) {
        json j;
        j["B"] = to_string(b);
        j["deg"] = deg;
        j["hypothesis_ok"] = pb.hypothesis_ok;
        j["note"] = pb.note;
        j["period_bound"] = to_string(pb.bound);
        j["primes"] = json::array({to_string(p), to_string(q)});
        emit(j);
    } else {
        std::cout << "B = " << to_string(b) << ", period_bound(" << to_string(p) << ","
                  << to_string(q) << ") = " << to_string(pb.bound) << "\n";
    }
    return 0;
}

int cmd_classify(const Options& opt) {
    if (opt.args.size() != 2) throw UsageError{"classify takes one argument: GRAPH"};
    PortraitGraph g = load_graph(opt.args[1]);
    Classification c = g.classify();
    if (opt.json) {
        emit(classification_to_json(c));
    } else {
        std::cout << c.kind_name() << "\n";
    }
    return 0;
}

int cmd_gens(const Options& opt) {
    if (opt.args.size() != 2) throw UsageError{"gens takes one argument: GRAPH"};
    PortraitGraph g = load_graph(opt.args[1]);
    GeneratorData data = generator_data(g);
    if (opt.json) {
        emit(generators_to_json(g, data));
    } else {
        for (const GeneratorEntry& e : data.entries) std::cout << generator_line(g, e) << "\n";
    }
    return 0;
}

int cmd_auto(const Options& opt) {
    if (opt.args.size() != 2) throw UsageError{"auto takes one argument: GRAPH"};
    PortraitGraph g = load_graph(opt.args[1]);
    Integer order = aut_order(g);
    if (opt.json) {
        json j;
        j["order"] = to_string(order);
        emit(j);
    } else {
        std::cout << to_string(order) << "\n";
    }
    return 0;
}

int cmd_normal_closure(const Options& opt) {
    if (opt.args.size() != 2) throw UsageError{"normal-closure takes one argument: GRAPH"};
    PortraitGraph g = load_graph(opt.args[1]);
    PortraitGraph nc = normal_closure(g);
    if (opt.json) {
        emit(graph_to_json(nc));
    } else {
        std::cout << nc.serialize();
    }
    return 0;
}

int cmd_iso(const Options& opt) {
    if (opt.args.size() != 3) throw UsageError{"iso takes two arguments: GRAPH1 GRAPH2"};
    PortraitGraph a = load_graph(opt.args[1]);
    PortraitGraph b = load_graph(opt.args[2]);
    bool same = is_isomorphic(a, b);
    if (opt.json) {
        json j;
        j["isomorphic"] = same;
        emit(j);
    } else {
        std::cout << (same ? "isomorphic" : "not isomorphic") << "\n";
    }
    return 0;
}

int cmd_curve(const Options& opt) {
    if (opt.args.size() != 2) throw UsageError{"curve takes one argument: GRAPH"};
    PortraitGraph g = load_graph(opt.args[1]);
    CurveSystem sys = curve_system(g, opt.cap);
    if (opt.json) {
        emit(curve_to_json(sys));
        return 0;
    }
    std::cout << "generators:";
    for (std::size_t i = 0; i < sys.gens.entries.size(); ++i)
        std::cout << (i ? "; " : " ") << generator_line(sys.graph, sys.gens.entries[i]);
    std::cout << "\nvariables:";
    for (const std::string& v : sys.variables) std::cout << " " << v;
    std::cout << "\n";
    for (std::size_t i = 0; i < sys.equations.size(); ++i)
        std::cout << "Psi_" << (i + 1) << " = " << sys.equations[i].to_text() << " = 0\n";
    for (const Inequation& q : sys.inequations)
        std::cout << q.poly.to_text() << " != 0  " << q.tag() << "\n";
    std::cout << "pi_degree = " << to_string(sys.pi_degree) << "\n";
    std::cout << "note: " << sys.note << "\n";
    return 0;
}

int cmd_pi_degree(const Options& opt) {
    if (opt.args.size() != 2) throw UsageError{"pi-degree takes one argument: GRAPH"};
    PortraitGraph g = load_graph(opt.args[1]);
    Integer deg = pi_degree(g);
    if (opt.json) {
        json j;
        j["pi_degree"] = to_string(deg);
        emit(j);
    } else {
        std::cout << to_string(deg) << "\n";
    }
    return 0;
}

int cmd_fiber(const Options& opt) {
    if (opt.args.size() != 3) throw UsageError{"fiber takes two arguments: GRAPH C"};
    PortraitGraph g = load_graph(opt.args[1]);
    Rational c = parse_rational(opt.args[2]);
    CurveSystem sys = curve_system(g, opt.cap);
    std::vector<std::vector<Rational>> tuples = rational_fiber(sys, c);
    if (opt.json) {
        json arr = json::array();
        for (const auto& tup : tuples) {
            json t = json::array();
            for (const Rational& x : tup) t.push_back(to_string(x));
            arr.push_back(t);
        }
        json j;
        j["c"] = to_string(c);
        j["count"] = tuples.size();
        j["tuples"] = arr;
        emit(j);
    } else {
        for (const auto& tup : tuples) {
            std::cout << "(";
            for (std::size_t i = 0; i < tup.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << to_string(tup[i]);
            }
            std::cout << ")\n";
        }
    }
    return 0;
}

int cmd_check_point(const Options& opt) {
    if (opt.args.size() < 3)
        throw UsageError{"check-point takes a curve source and point coordinates"};
    std::string source = opt.args[1];
    std::string text;
    if (source == "--stdin") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        text = read_file(source);
    }
    CurveSystem sys = curve_from_json(json::parse(text));
    std::vector<Rational> coords;
    for (std::size_t i = 2; i < opt.args.size(); ++i) coords.push_back(parse_rational(opt.args[i]));
    PointClass cls = check_point(sys, coords);
    if (opt.json) {
        json j;
        j["class"] = point_class_name(cls);
        emit(j);
    } else {
        std::cout << point_class_name(cls) << "\n";
    }
    return 0;
}

int dispatch(const Options& opt) {
    const std::string& cmd = opt.args.at(0);
    if (cmd == "dynatomic") return cmd_dynatomic(opt);
    if (cmd == "gen-dynatomic") return cmd_gen_dynatomic(opt);
    if (cmd == "branch-poly") return cmd_branch_poly(opt);
    if (cmd == "verify-identities") return cmd_verify_identities(opt);
    if (cmd == "preper") return cmd_preper(opt);
    if (cmd == "pcf-scan") return cmd_pcf_scan(opt);
    if (cmd == "bounds") return cmd_bounds(opt);
    if (cmd == "classify") return cmd_classify(opt);
    if (cmd == "gens") return cmd_gens(opt);
    if (cmd == "auto") return cmd_auto(opt);
    if (cmd == "normal-closure") return cmd_normal_closure(opt);
    if (cmd == "iso") return cmd_iso(opt);
    if (cmd == "curve") return cmd_curve(opt);
    if (cmd == "pi-degree") return cmd_pi_degree(opt);
    if (cmd == "fiber") return cmd_fiber(opt);
    if (cmd == "check-point") return cmd_check_point(opt);
    throw UsageError{"unknown subcommand: " + cmd};
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    try {
        opt = parse_options(argc, argv);
        if (opt.args.empty()) throw UsageError{"missing subcommand"};
        return dispatch(opt);
    } catch (const UsageError& u) {
        if (!u.message.empty()) std::cerr << "error: " << u.message << "\n";
        std::cerr << kUsage;
        return 2;
    } catch (const std::exception& e) {
        if (opt.json) {
            json j;
            j["error"] = e.what();
            std::cout << j.dump() << "\n";
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
