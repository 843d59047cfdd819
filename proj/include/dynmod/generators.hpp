#pragma once

// Generating sets for portrait graphs. A set S generates G when the closure
// of S under the image map and negation is all of G. Minimal generating sets
// correspond to choosing one vertex from each source component of the
// auxiliary digraph with edges v -> f(v) and v -> -v: a strongly connected
// component with no incoming edge must contribute a generator, and any one of
// its vertices reaches the whole component.
//
// For an ordered generating list (P_1, ..., P_n), write G_i for the subgraph
// generated by P_1..P_i and H_i = G_i \ G_{i-1}. A generator either starts a
// fresh orbit (its forward orbit misses G_{i-1}, the "disjoint" case) or hangs
// onto earlier material, in which case the attachment is recorded by
//   kappa_i : least k >= 1 with f^k(P_i) in G_{i-1},
//   j_i     : the unique earlier index with f^kappa(P_i) in H_j,
//   lambda_i: least l >= 0 with f^l(P_{j_i}) = -f^kappa(P_i).
// These data determine the graph up to isomorphism, and two generated graphs
// are compared generator-by-generator through exactly these conditions.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmod/portrait_graph.hpp"

namespace dynmod {

struct GeneratorEntry {
    int vertex = -1;        // vertex index in its graph
    Portrait portrait;      // preperiod/eventual period of the generator
    bool attached = false;  // false: orbit disjoint from earlier generators
    long kappa = 0;         // attached only: first step landing in G_{i-1}
    int j = 0;              // attached only: 1-based index of the owning chunk H_j
    long lambda = 0;        // attached only: f^lambda(P_j) = -f^kappa(P_i)
};

struct GeneratorData {
    std::vector<GeneratorEntry> entries;
    int size() const { return static_cast<int>(entries.size()); }
};

namespace detail {

// Strongly connected components of succ/negation edges, iterative Tarjan.
// Returns one sorted vertex list per component.
inline std::vector<std::vector<int>> plus_orbit_sccs(const PortraitGraph& g) {
    int n = g.size();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        adj[static_cast<std::size_t>(v)].push_back(g.succ(v));
        int m = g.negation(v);
        if (m != v) adj[static_cast<std::size_t>(v)].push_back(m);
    }
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            auto& edges = adj[static_cast<std::size_t>(f.v)];
            if (f.child < edges.size()) {
                int w = edges[f.child++];
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        comp.push_back(w);
                    } while (w != f.v);
                    std::sort(comp.begin(), comp.end());
                    sccs.push_back(std::move(comp));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[static_cast<std::size_t>(call.back().v)] =
                        std::min(low[static_cast<std::size_t>(call.back().v)], low[static_cast<std::size_t>(v)]);
            }
        }
    }
    return sccs;
}

// Component lists of the auxiliary digraph with no incoming edge from outside.
inline std::vector<std::vector<int>> source_sccs(const PortraitGraph& g) {
    auto sccs = plus_orbit_sccs(g);
    std::vector<int> comp_of(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t c = 0; c < sccs.size(); ++c)
        for (int v : sccs[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    std::vector<char> has_in(sccs.size(), 0);
    for (int v = 0; v < g.size(); ++v) {
        for (int w : {g.succ(v), g.negation(v)}) {
            if (comp_of[static_cast<std::size_t>(v)] != comp_of[static_cast<std::size_t>(w)])
                has_in[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(w)])] = 1;
        }
    }
    std::vector<std::vector<int>> out;
    for (std::size_t c = 0; c < sccs.size(); ++c)
        if (!has_in[c]) out.push_back(sccs[c]);
    return out;
}

inline void sort_generators(const PortraitGraph& g, std::vector<int>& gens) {
    std::sort(gens.begin(), gens.end(), [&](int a, int b) {
        Portrait pa = g.portrait(a), pb = g.portrait(b);
        if (pa.period != pb.period) return pa.period < pb.period;
        if (pa.preperiod != pb.preperiod) return pa.preperiod > pb.preperiod;
        return g.name(a) < g.name(b);
    });
}

}  // namespace detail

// Canonical minimal generating set: one representative per source component
// (smallest preperiod, then smallest name), ordered by eventual period
// ascending, preperiod descending, name ascending.
inline std::vector<int> minimal_generating_set(const PortraitGraph& g) {
    Classification c = g.classify();
    if (c.kind == Classification::Kind::Invalid)
        throw std::invalid_argument("generating sets need a valid portrait graph: " + c.reason);
    std::vector<int> gens;
    for (const auto& comp : detail::source_sccs(g)) {
        int best = comp[0];
        for (int v : comp) {
            auto key = std::make_pair(g.portrait(v).preperiod, g.name(v));
            auto cur = std::make_pair(g.portrait(best).preperiod, g.name(best));
            if (key < cur) best = v;
        }
        gens.push_back(best);
    }
    detail::sort_generators(g, gens);
    return gens;
}

// Every minimal generating set, as sorted vertex lists (each choice of one
// vertex per source component), mainly for exhaustive testing.
inline std::vector<std::vector<int>> all_minimal_generating_sets(const PortraitGraph& g) {
    auto sources = detail::source_sccs(g);
    std::vector<std::vector<int>> out{{}};
    for (const auto& comp : sources) {
        std::vector<std::vector<int>> next;
        for (const auto& partial : out)
            for (int v : comp) {
                auto copy = partial;
                copy.push_back(v);
                next.push_back(std::move(copy));
            }
        out = std::move(next);
    }
    for (auto& gens : out) detail::sort_generators(g, gens);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool generates(const PortraitGraph& g, const std::vector<int>& verts) {
    return static_cast<int>(g.closure(std::set<int>(verts.begin(), verts.end())).size()) == g.size();
}

// Attachment data for an ordered, irredundant generating list: each P_i must
// add new vertices (P_i not generated by P_1..P_{i-1}) and together they must
// generate all of g.
inline GeneratorData generator_data_for(const PortraitGraph& g, const std::vector<int>& gens) {
    GeneratorData data;
    std::set<int> accumulated;                 // G_{i-1}
    std::vector<std::set<int>> chunks;         // H_1, ..., H_{i-1}
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int p = gens[i];
        if (p < 0 || p >= g.size()) throw std::invalid_argument("generator index out of range");
        if (accumulated.count(p))
            throw std::invalid_argument("redundant generator: " + g.name(p) +
                                        " is already generated by its predecessors");
        GeneratorEntry e;
        e.vertex = p;
        e.portrait = g.portrait(p);

        std::vector<int> orb = g.orbit(p);
        long kappa = -1;
        for (std::size_t k = 0; k < orb.size(); ++k) {
            if (accumulated.count(orb[k])) {
                kappa = static_cast<long>(k);
                break;
            }
        }
        if (kappa == -1) {
            e.attached = false;
        } else {
            e.attached = true;
            e.kappa = kappa;
            int w = orb[static_cast<std::size_t>(kappa)];
            int owner = -1;
            for (std::size_t c = 0; c < chunks.size(); ++c)
                if (chunks[c].count(w)) owner = static_cast<int>(c);
            if (owner < 0) throw std::logic_error("attachment vertex not in any earlier chunk");
            e.j = owner + 1;
            int target = g.negation(w);
            std::vector<int> jorb = g.orbit(gens[static_cast<std::size_t>(owner)]);
            long lambda = -1;
            for (std::size_t l = 0; l < jorb.size(); ++l) {
                if (jorb[l] == target) {
                    lambda = static_cast<long>(l);
                    break;
                }
            }
            if (lambda == -1)
                throw std::logic_error("negated attachment vertex not on the owning generator's orbit");
            e.lambda = lambda;
        }

        std::set<int> with = g.closure({p});
        std::set<int> chunk;
        for (int v : with)
            if (!accumulated.count(v)) chunk.insert(v);
        chunks.push_back(std::move(chunk));
        accumulated.insert(with.begin(), with.end());
        data.entries.push_back(e);
    }
    if (static_cast<int>(accumulated.size()) != g.size())
        throw std::invalid_argument("list does not generate the graph: " +
                                    std::to_string(accumulated.size()) + " of " +
                                    std::to_string(g.size()) + " vertices reached");
    return data;
}

inline GeneratorData generator_data(const PortraitGraph& g) {
    return generator_data_for(g, minimal_generating_set(g));
}

// Does mapping the generators behind `data` (in graph g) to the vertices
// `images` (in graph h) extend to an isomorphism of g onto the subgraph of h
// generated by the images?  Checked condition by condition:
//   disjoint generator: image orbit misses the earlier part and the image has
//     the same portrait;
//   attached generator: image orbit meets the earlier part and
//     f^kappa(image_i) = -f^lambda(image_{j_i}).
// The images must generate all of h. When h is nearly admissible the ramified
// vertex is its own negation, so g may exceed h by one collapsed vertex; no
// size comparison is made.
inline bool iso_with_generators(const PortraitGraph& g, const GeneratorData& data,
                                const PortraitGraph& h, const std::vector<int>& images) {
    if (images.size() != data.entries.size())
        throw std::invalid_argument("generator/image count mismatch");
    std::set<int> accumulated;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const GeneratorEntry& e = data.entries[i];
        int q = images[i];
        if (q < 0 || q >= h.size()) throw std::invalid_argument("image index out of range");
        std::vector<int> orb = h.orbit(q);
        long first_hit = -1;
        for (std::size_t k = 0; k < orb.size(); ++k) {
            if (accumulated.count(orb[k])) {
                first_hit = static_cast<long>(k);
                break;
            }
        }
        if (!e.attached) {
            if (first_hit != -1) return false;
            if (!(h.portrait(q) == e.portrait)) return false;
        } else {
            if (first_hit == -1) return false;
            int w = q;
            for (long k = 0; k < e.kappa; ++k) w = h.succ(w);
            int z = images[static_cast<std::size_t>(e.j - 1)];
            for (long l = 0; l < e.lambda; ++l) z = h.succ(z);
            if (h.negation(z) != w) return false;
        }
        auto cl = h.closure({q});
        accumulated.insert(cl.begin(), cl.end());
    }
    return static_cast<int>(accumulated.size()) == h.size();
}

// Portrait-graph isomorphism (or near-isomorphism when one side is nearly
// admissible): some assignment of images to the canonical generators of g
// satisfies the generator conditions in h, and symmetry is not needed because
// the conditions pin the rest of the map.
inline bool is_isomorphic(const PortraitGraph& g, const PortraitGraph& h) {
    if (g.size() == 0 || h.size() == 0) return g.size() == h.size();
    GeneratorData data = generator_data(g);
    int n = data.size();
    std::vector<std::vector<int>> candidates(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const GeneratorEntry& e = data.entries[static_cast<std::size_t>(i)];
        for (int v = 0; v < h.size(); ++v) {
            // Fresh generators keep their exact portrait; attached ones only
            // their eventual period (a collapsed pair can shorten preperiods).
            if (e.attached ? h.portrait(v).period == e.portrait.period
                           : h.portrait(v) == e.portrait)
                candidates[static_cast<std::size_t>(i)].push_back(v);
        }
        if (candidates[static_cast<std::size_t>(i)].empty()) return false;
    }
    std::vector<int> pick(static_cast<std::size_t>(n), -1);
    std::vector<std::size_t> at(static_cast<std::size_t>(n), 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == n) {
            if (iso_with_generators(g, data, h, pick)) return true;
            --depth;
            continue;
        }
        auto& cursor = at[static_cast<std::size_t>(depth)];
        if (cursor == candidates[static_cast<std::size_t>(depth)].size()) {
            cursor = 0;
            --depth;
            continue;
        }
        pick[static_cast<std::size_t>(depth)] = candidates[static_cast<std::size_t>(depth)][cursor++];
        ++depth;
    }
    return false;
}

}  // namespace dynmod
