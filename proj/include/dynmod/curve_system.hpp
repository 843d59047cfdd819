#pragma once

// Defining equation systems for the curves parametrizing quadratic maps
// together with marked preperiodic structure.
//
// For an admissible graph G with canonical generators P_1..P_n, the system
// lives in variables t, x_1..x_n. A generator starting a fresh orbit of
// portrait (M, N) contributes the generalized dynatomic equation
// Phi_{M,N}(x_i, t) = 0; a generator attached to earlier material via
// (kappa, j, lambda) contributes f^kappa(x_i) + f^lambda(x_j) = 0. Two
// families of inequations cut out the locus where the marked points realize
// exactly G: "disjoint orbit" conditions separating same-period fresh orbits,
// and "right portrait" conditions barring each fresh point from smaller
// portraits. The degree of the projection to the t-line is a product of
// local factors: each added N-cycle contributes N * (R(N) - r), each +-pair
// at preperiod >= 2 contributes 2.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynmod/dynatomic.hpp"
#include "dynmod/generators.hpp"
#include "dynmod/numeric.hpp"
#include "dynmod/portrait_graph.hpp"
#include "dynmod/rational.hpp"
#include "dynmod/rational_dynamics.hpp"

namespace dynmod {

struct Inequation {
    enum class Kind { DisjointOrbit, RightPortrait };
    Kind kind = Kind::DisjointOrbit;
    MultiPoly poly;
    int i = 0;    // 1-based generator index the condition protects
    int j = 0;    // DisjointOrbit: earlier generator index
    long k = -1;  // DisjointOrbit: orbit shift, 0 <= k < N
    long m = -1;  // RightPortrait: poly is Phi_{m, N_i}(x_i), 0 <= m < M_i
    long n = -1;  // RightPortrait: poly is Phi_{M_i, n}(x_i), n a proper divisor of N_i

    std::string kind_name() const {
        return kind == Kind::DisjointOrbit ? "DisjointOrbit" : "RightPortrait";
    }
    std::string tag() const {
        std::string out = "[" + kind_name() + " i=" + std::to_string(i);
        if (kind == Kind::DisjointOrbit) {
            out += " j=" + std::to_string(j) + " k=" + std::to_string(k);
        } else if (m >= 0) {
            out += " m=" + std::to_string(m);
        } else {
            out += " n=" + std::to_string(n);
        }
        return out + "]";
    }
};

struct CurveSystem {
    PortraitGraph graph;
    GeneratorData gens;
    std::vector<std::string> generator_names;
    std::vector<std::string> variables;  // "t", "x1", ..., "xn"
    std::vector<MultiPoly> equations;    // Psi_1..Psi_n
    std::vector<Inequation> inequations;
    Integer pi_degree = 1;
    // Known from theory, recorded as metadata rather than decided here.
    std::string note = "the closed curve is irreducible over every field of characteristic zero";
};

// Degree of the projection of the marked curve to the t-line, as a product of
// cycle factors N*(R(N)-r) and a factor 2 per +-pair of preperiod >= 2.
// Accepts admissible graphs and bare unions of cycles (the level-0 case).
inline Integer pi_degree(const PortraitGraph& g) {
    // A bare union of cycles (every vertex periodic with in-degree 1) is the
    // level-0 base of the tower and is accepted as-is; anything else must be
    // admissible.  In particular a collapsed critical pair is rejected.
    bool bare_cycles = true;
    for (int v = 0; v < g.size() && bare_cycles; ++v)
        if (g.portrait(v).preperiod != 0 || g.in_degree(v) != 1) bare_cycles = false;
    if (!bare_cycles) {
        Classification c = g.classify();
        if (!c.admissible_or_stronger())
            throw std::invalid_argument(
                "pi_degree needs an admissible graph or a bare union of cycles, got " +
                c.kind_name());
    }
    Integer total = 1;
    std::map<long, long> added;
    for (const auto& cyc : g.cycles()) {
        long N = static_cast<long>(cyc.size());
        long r = added[N]++;
        long factor = N * (cycle_count_bound(N) - r);
        if (factor <= 0)
            throw std::domain_error("more than R(" + std::to_string(N) + ") cycles of length " +
                                    std::to_string(N));
        total *= factor;
    }
    long deep = 0;
    for (int v = 0; v < g.size(); ++v)
        if (g.portrait(v).preperiod >= 2) ++deep;
    total *= pow_integer(2, static_cast<unsigned long>(deep / 2));
    return total;
}

// Equation system for an explicit ordered generating list (irredundant, as
// validated by generator_data_for); curve_system() below uses the canonical
// minimal generators.
inline CurveSystem curve_system_for(const PortraitGraph& g, const std::vector<int>& gen_vertices,
                                    long cap = kDefaultDegreeCap) {
    Classification cls = g.classify();
    if (!cls.admissible_or_stronger())
        throw std::invalid_argument("curve systems need an admissible graph, got " + cls.kind_name());
    CurveSystem sys;
    sys.graph = g;
    sys.gens = generator_data_for(g, gen_vertices);
    int n = sys.gens.size();
    sys.variables.push_back("t");
    for (int i = 1; i <= n; ++i) sys.variables.push_back("x" + std::to_string(i));
    for (int v : gen_vertices) sys.generator_names.push_back(g.name(v));

    for (int i = 1; i <= n; ++i) {
        const GeneratorEntry& e = sys.gens.entries[static_cast<std::size_t>(i - 1)];
        const std::string xi = "x" + std::to_string(i);
        if (!e.attached) {
            MultiPoly psi = gen_dynatomic(e.portrait.preperiod, e.portrait.period, cap);
            sys.equations.push_back(xi == "x1" ? psi : psi.renamed("x1", xi));
        } else {
            const std::string xj = "x" + std::to_string(e.j);
            MultiPoly lhs = iterate_poly(e.kappa, cap);
            MultiPoly rhs = iterate_poly(e.lambda, cap);
            sys.equations.push_back((xi == "x1" ? lhs : lhs.renamed("x1", xi)) +
                                    (xj == "x1" ? rhs : rhs.renamed("x1", xj)));
        }
    }

    // Disjoint-orbit conditions: fresh orbits of equal period must not be
    // shifts of one another: f^{M_i}(x_i) != f^{M_j + k}(x_j), 0 <= k < N.
    for (int i = 2; i <= n; ++i) {
        const GeneratorEntry& ei = sys.gens.entries[static_cast<std::size_t>(i - 1)];
        if (ei.attached) continue;
        for (int j = 1; j < i; ++j) {
            const GeneratorEntry& ej = sys.gens.entries[static_cast<std::size_t>(j - 1)];
            if (ej.attached || ej.portrait.period != ei.portrait.period) continue;
            const std::string xi = "x" + std::to_string(i);
            const std::string xj = "x" + std::to_string(j);
            MultiPoly lhs = iterate_poly(ei.portrait.preperiod, cap);
            if (xi != "x1") lhs = lhs.renamed("x1", xi);
            for (long k = 0; k < ei.portrait.period; ++k) {
                MultiPoly rhs = iterate_poly(ej.portrait.preperiod + k, cap);
                if (xj != "x1") rhs = rhs.renamed("x1", xj);
                Inequation q;
                q.kind = Inequation::Kind::DisjointOrbit;
                q.poly = lhs - rhs;
                q.i = i;
                q.j = j;
                q.k = k;
                sys.inequations.push_back(std::move(q));
            }
        }
    }

    // Right-portrait conditions: a fresh generator of portrait (M, N) must
    // not satisfy any smaller-portrait dynatomic equation.
    for (int i = 1; i <= n; ++i) {
        const GeneratorEntry& e = sys.gens.entries[static_cast<std::size_t>(i - 1)];
        if (e.attached) continue;
        const std::string xi = "x" + std::to_string(i);
        for (long d : divisors(e.portrait.period)) {
            if (d == e.portrait.period) continue;
            Inequation q;
            q.kind = Inequation::Kind::RightPortrait;
            MultiPoly p = gen_dynatomic(e.portrait.preperiod, d, cap);
            q.poly = xi == "x1" ? p : p.renamed("x1", xi);
            q.i = i;
            q.n = d;
            sys.inequations.push_back(std::move(q));
        }
        for (long m = 0; m < e.portrait.preperiod; ++m) {
            Inequation q;
            q.kind = Inequation::Kind::RightPortrait;
            MultiPoly p = gen_dynatomic(m, e.portrait.period, cap);
            q.poly = xi == "x1" ? p : p.renamed("x1", xi);
            q.i = i;
            q.m = m;
            sys.inequations.push_back(std::move(q));
        }
    }

    sys.pi_degree = pi_degree(g);
    return sys;
}

inline CurveSystem curve_system(const PortraitGraph& g, long cap = kDefaultDegreeCap) {
    return curve_system_for(g, minimal_generating_set(g), cap);
}

// Splits an admissible graph into blocks of connected components grouped by
// cycle length. Blocks pairwise share no cycle length, so the curve of g is
// the fiber product of the block curves over the t-line and the projection
// degrees multiply.
struct FiberDecomposition {
    std::vector<PortraitGraph> blocks;  // ordered by cycle length
    bool applicable = true;
};

inline FiberDecomposition fiber_decomposition(const PortraitGraph& g) {
    Classification c = g.classify();
    if (!c.admissible_or_stronger())
        throw std::invalid_argument("fiber decomposition needs an admissible graph, got " +
                                    c.kind_name());
    std::map<long, std::set<int>> by_length;
    for (const auto& comp : g.components()) {
        long N = g.portrait(comp[0]).period;
        by_length[N].insert(comp.begin(), comp.end());
    }
    FiberDecomposition out;
    for (const auto& [N, verts] : by_length) out.blocks.push_back(g.induced(verts));
    // Each block carries exactly one cycle length and the lengths are the
    // distinct map keys, so the pairwise-disjointness hypothesis holds by
    // construction; it is re-checked literally all the same.
    std::set<long> seen;
    for (const auto& block : out.blocks) {
        std::set<long> lengths;
        for (const auto& cyc : block.cycles()) lengths.insert(static_cast<long>(cyc.size()));
        for (long len : lengths)
            if (!seen.insert(len).second) out.applicable = false;
    }
    return out;
}

enum class PointClass { OnU1, OnYGOnly, NotOnYG };

inline std::string point_class_name(PointClass c) {
    switch (c) {
        case PointClass::OnU1: return "OnU1";
        case PointClass::OnYGOnly: return "OnYGOnly";
        default: return "NotOnYG";
    }
}

// Classify a point (x_1, ..., x_n, c): on the open locus (every equation
// vanishes, every inequation nonzero), on the closed system only, or off it.
inline PointClass check_point(const CurveSystem& sys, const std::vector<Rational>& coords) {
    if (coords.size() != sys.variables.size())
        throw std::invalid_argument("expected " + std::to_string(sys.variables.size()) +
                                    " coordinates (x_1..x_n, c), got " +
                                    std::to_string(coords.size()));
    std::map<std::string, Rational> assign;
    assign["t"] = coords.back();
    for (std::size_t i = 0; i + 1 < coords.size(); ++i)
        assign["x" + std::to_string(i + 1)] = coords[i];
    for (const MultiPoly& eq : sys.equations)
        if (eq.eval(assign) != 0) return PointClass::NotOnYG;
    for (const Inequation& q : sys.inequations)
        if (q.poly.eval(assign) == 0) return PointClass::OnYGOnly;
    return PointClass::OnU1;
}

// All rational points of the open locus over a given c, found by matching
// tuples of rational preperiodic points against the generator conditions and
// cross-checked against the equation system by exact evaluation.
inline std::vector<std::vector<Rational>> rational_fiber(const CurveSystem& sys, const Rational& c) {
    RationalPreperSet pre = preper_set(c);
    int n = sys.gens.size();
    std::vector<std::vector<Rational>> found;
    if (n == 0) {
        found.push_back({});
        return found;
    }
    if (pre.points.empty()) return found;

    // Candidate points per generator: fresh generators need the exact
    // portrait; attached ones only need the eventual period (a collapsed
    // critical pair can shorten preperiods).
    std::vector<std::vector<const OrbitRecord*>> candidates(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const GeneratorEntry& e = sys.gens.entries[static_cast<std::size_t>(i)];
        for (const OrbitRecord& rec : pre.points) {
            if (e.attached ? rec.portrait.period == e.portrait.period
                           : rec.portrait == e.portrait)
                candidates[static_cast<std::size_t>(i)].push_back(&rec);
        }
        if (candidates[static_cast<std::size_t>(i)].empty()) return found;
    }

    std::vector<const OrbitRecord*> pick(static_cast<std::size_t>(n), nullptr);
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            std::vector<int> images;
            std::set<int> seeds;
            for (const OrbitRecord* rec : pick) {
                int v = pre.graph.index_of(to_string(rec->point));
                images.push_back(v);
                seeds.insert(v);
            }
            PortraitGraph sub = pre.graph.induced(pre.graph.closure(seeds));
            std::vector<int> sub_images;
            for (const OrbitRecord* rec : pick)
                sub_images.push_back(sub.index_of(to_string(rec->point)));
            if (!iso_with_generators(sys.graph, sys.gens, sub, sub_images)) return;
            std::vector<Rational> tuple;
            for (const OrbitRecord* rec : pick) tuple.push_back(rec->point);
            tuple.push_back(c);
            if (check_point(sys, tuple) != PointClass::OnU1)
                throw std::logic_error("generator-matched tuple failed the equation cross-check");
            tuple.pop_back();
            found.push_back(std::move(tuple));
            return;
        }
        for (const OrbitRecord* rec : candidates[static_cast<std::size_t>(depth)]) {
            pick[static_cast<std::size_t>(depth)] = rec;
            self(self, depth + 1);
        }
    };
    recurse(recurse, 0);
    return found;
}

}  // namespace dynmod
