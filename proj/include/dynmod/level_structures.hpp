#pragma once

// Full-level portrait graphs, normal graphs and their automorphism counts.
//
// The full level-(M, N) graph carries every admissible structure of one
// period: all R(N) cycles of length N, each cycle vertex paired with the
// negation partner of its predecessor, and complete binary trees of
// preimage pairs down to preperiod M. Level (0, N) is the bare union of the
// R(N) cycles. A graph is "normal" when it is a disjoint union of full-level
// graphs with pairwise distinct periods; every admissible graph embeds into a
// smallest such union, its normal closure, obtained by taking, for each cycle
// length that occurs, the full level at the maximal preperiod that occurs
// with it.
//
// For a normal union the automorphism count factors per level: cycles of one
// length may be permuted (R! ways) and each rotated independently (N^R), and
// above every cycle vertex sits a complete binary tree of depth M - 1 whose
// 2^(M-1) - 1 internal nodes can each swap their two subtrees.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynmod/numeric.hpp"
#include "dynmod/portrait_graph.hpp"
#include "dynmod/rational.hpp"

namespace dynmod {

inline constexpr int kAutBruteCap = 16;
inline constexpr long long kLevelVertexCap = 4096;

// Edges of the full level-(M, N) graph with deterministic vertex names:
// cycle vertices prefix+"g<k>c<i>", their partners with an extra "m", and
// deeper preimage pairs with binary suffixes ("0"/"1") on the parent's name.
inline std::vector<std::pair<std::string, std::string>> full_level_edges(long M, long N,
                                                                         const std::string& prefix = "") {
    if (M < 0 || N < 1) throw std::invalid_argument("full level graph needs M >= 0, N >= 1");
    long long count = period_degree(N);
    for (long m = 0; m < M; ++m) {
        count *= 2;
        if (count > kLevelVertexCap)
            throw std::domain_error("full level graph exceeds the vertex cap of " +
                                    std::to_string(kLevelVertexCap) + " vertices");
    }
    if (count > kLevelVertexCap)
        throw std::domain_error("full level graph exceeds the vertex cap of " +
                                std::to_string(kLevelVertexCap) + " vertices");

    std::vector<std::pair<std::string, std::string>> edges;
    long long R = cycle_count_bound(N);
    for (long long k = 1; k <= R; ++k) {
        std::vector<std::string> cyc;
        for (long i = 0; i < N; ++i)
            cyc.push_back(prefix + "g" + std::to_string(k) + "c" + std::to_string(i));
        std::vector<std::string> frontier;
        for (long i = 0; i < N; ++i) {
            const std::string& next = cyc[static_cast<std::size_t>((i + 1) % N)];
            edges.emplace_back(cyc[static_cast<std::size_t>(i)], next);
            if (M >= 1) {
                std::string partner = cyc[static_cast<std::size_t>(i)] + "m";
                edges.emplace_back(partner, next);
                frontier.push_back(partner);
            }
        }
        for (long depth = 2; depth <= M; ++depth) {
            std::vector<std::string> next_frontier;
            for (const std::string& u : frontier) {
                for (const char* suffix : {"0", "1"}) {
                    std::string child = u + suffix;
                    edges.emplace_back(child, u);
                    next_frontier.push_back(std::move(child));
                }
            }
            frontier = std::move(next_frontier);
        }
    }
    return edges;
}

inline PortraitGraph full_level_graph(long M, long N, const std::string& prefix = "") {
    return PortraitGraph::from_edges(full_level_edges(M, N, prefix));
}

namespace detail {

// Cycle lengths of g together with, per length: number of cycles and the
// maximal preperiod occurring above cycles of that length.
struct LevelGroup {
    long cycles = 0;
    long max_preperiod = 0;
    std::vector<int> vertices;
};

inline std::map<long, LevelGroup> level_groups(const PortraitGraph& g) {
    std::map<long, LevelGroup> groups;
    for (const auto& cyc : g.cycles()) ++groups[static_cast<long>(cyc.size())].cycles;
    for (int v = 0; v < g.size(); ++v) {
        Portrait p = g.portrait(v);
        LevelGroup& grp = groups.at(p.period);
        grp.max_preperiod = std::max(grp.max_preperiod, p.preperiod);
        grp.vertices.push_back(v);
    }
    return groups;
}

}  // namespace detail

// Whether g is a disjoint union of full level graphs with distinct periods.
inline bool is_normal(const PortraitGraph& g) {
    for (const auto& [N, grp] : detail::level_groups(g)) {
        if (grp.cycles != cycle_count_bound(N)) return false;
        for (int v : grp.vertices) {
            long m = g.portrait(v).preperiod;
            if (grp.max_preperiod == 0) continue;  // bare cycles
            if (m < grp.max_preperiod && g.in_degree(v) != 2) return false;
            if (m == grp.max_preperiod && g.in_degree(v) != 0) return false;
        }
    }
    return true;
}

// Smallest normal graph containing (a copy of) g: one full level graph per
// occurring cycle length, at the maximal preperiod seen with that length.
// Admissible input only; vertex names are rebuilt deterministically.
inline PortraitGraph normal_closure(const PortraitGraph& g) {
    Classification c = g.classify();
    if (!c.admissible_or_stronger())
        throw std::invalid_argument("normal closure needs an admissible graph, got " +
                                    c.kind_name());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [N, grp] : detail::level_groups(g)) {
        auto level = full_level_edges(grp.max_preperiod, N, "n" + std::to_string(N));
        edges.insert(edges.end(), level.begin(), level.end());
    }
    return PortraitGraph::from_edges(edges);
}

// Exhaustive automorphism count (bijections commuting with the image map),
// for small graphs; used directly and as the oracle for the closed form.
inline Integer aut_brute(const PortraitGraph& g, int cap = kAutBruteCap) {
    int n = g.size();
    if (n > cap)
        throw std::domain_error("brute-force automorphism counting is capped at " +
                                std::to_string(cap) + " vertices");
    if (n == 0) return 1;

    // Invariant classes, refined to a fixed point: start from (portrait,
    // in-degree), then repeatedly fold in the class of the image and the
    // class multiset of the preimages.
    std::vector<long> cls(static_cast<std::size_t>(n));
    {
        std::map<std::tuple<long, long, int>, long> first;
        for (int v = 0; v < n; ++v) {
            Portrait p = g.portrait(v);
            auto key = std::make_tuple(p.preperiod, p.period, g.in_degree(v));
            auto [it, inserted] = first.emplace(key, static_cast<long>(first.size()));
            cls[static_cast<std::size_t>(v)] = it->second;
        }
        while (true) {
            std::map<std::pair<long, std::vector<long>>, long> next_ids;
            std::vector<long> next(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) {
                std::vector<long> sig{cls[static_cast<std::size_t>(v)],
                                      cls[static_cast<std::size_t>(g.succ(v))]};
                std::vector<long> pre;
                for (int u = 0; u < n; ++u)
                    if (g.succ(u) == v) pre.push_back(cls[static_cast<std::size_t>(u)]);
                std::sort(pre.begin(), pre.end());
                sig.insert(sig.end(), pre.begin(), pre.end());
                auto [it, inserted] =
                    next_ids.emplace(std::make_pair(cls[static_cast<std::size_t>(v)], sig),
                                     static_cast<long>(next_ids.size()));
                next[static_cast<std::size_t>(v)] = it->second;
            }
            if (next == cls) break;
            cls = std::move(next);
        }
    }

    std::vector<int> sigma(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    long count = 0;

    // Assign sigma[v] = w and propagate forward along the image map; record
    // assignments on the trail for undoing.
    auto try_assign = [&](int v, int w, std::vector<int>& trail) -> bool {
        std::vector<std::pair<int, int>> todo{{v, w}};
        while (!todo.empty()) {
            auto [a, b] = todo.back();
            todo.pop_back();
            if (sigma[static_cast<std::size_t>(a)] != -1) {
                if (sigma[static_cast<std::size_t>(a)] != b) return false;
                continue;
            }
            if (used[static_cast<std::size_t>(b)]) return false;
            if (cls[static_cast<std::size_t>(a)] != cls[static_cast<std::size_t>(b)]) return false;
            sigma[static_cast<std::size_t>(a)] = b;
            used[static_cast<std::size_t>(b)] = 1;
            trail.push_back(a);
            todo.emplace_back(g.succ(a), g.succ(b));
        }
        return true;
    };

    auto undo = [&](std::vector<int>& trail) {
        for (int a : trail) {
            used[static_cast<std::size_t>(sigma[static_cast<std::size_t>(a)])] = 0;
            sigma[static_cast<std::size_t>(a)] = -1;
        }
        trail.clear();
    };

    auto recurse = [&](auto&& self, int from) -> void {
        int v = -1;
        for (int u = from; u < n; ++u)
            if (sigma[static_cast<std::size_t>(u)] == -1) {
                v = u;
                break;
            }
        if (v == -1) {
            ++count;
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)] ||
                cls[static_cast<std::size_t>(w)] != cls[static_cast<std::size_t>(v)])
                continue;
            std::vector<int> trail;
            if (try_assign(v, w, trail)) self(self, v + 1);
            undo(trail);
        }
    };
    recurse(recurse, 0);
    return Integer(count);
}

// Automorphism count. Normal graphs get the closed form
//   prod over levels (M, N):  R! * N^R * (2^(2^(M-1) - 1))^(R * N)
// (with tree factor 1 when M = 0); anything else falls back to brute force
// under the vertex cap.
inline Integer aut_order(const PortraitGraph& g) {
    if (!is_normal(g)) return aut_brute(g);
    Integer total = 1;
    for (const auto& [N, grp] : detail::level_groups(g)) {
        long long R = grp.cycles;
        Integer fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(R));
        total *= fact;
        total *= pow_integer(Integer(N), static_cast<unsigned long>(R));
        long M = grp.max_preperiod;
        if (M >= 1) {
            Integer tree = pow_integer(Integer(2), (1UL << static_cast<unsigned long>(M - 1)) - 1);
            total *= pow_integer(tree, static_cast<unsigned long>(R * N));
        }
    }
    return total;
}

}  // namespace dynmod
