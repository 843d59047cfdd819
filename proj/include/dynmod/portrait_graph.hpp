#pragma once

// Directed graphs of preperiodic portraits for an even map: every vertex has
// exactly one outgoing edge (its image), in-degrees are 0, 1 or 2, and the two
// preimages of a vertex are negation partners. When exactly one vertex has a
// single preimage, that preimage acts as its own negation (the ramified
// vertex, -P = P) and the graph is at best "nearly admissible".
//
// Admissibility (for G to occur as the full rational preperiodic graph of a
// non-degenerate quadratic):
//   (a) every in-degree is 0 or 2,
//   (b) at most R(N) cycles of each length N >= 2,
//   (c) (strong form) zero or two fixed points.
//
// The text format is one edge per line, "name -> name", with '#' comments.
// Names may use letters, digits, '_', '-' and '/' so rational points such as
// -7/4 can serve as vertex names directly.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynmod/numeric.hpp"

namespace dynmod {

struct Portrait {
    long preperiod = 0;  // M: steps before entering the cycle
    long period = 0;     // N: eventual cycle length

    friend bool operator==(const Portrait& a, const Portrait& b) = default;
    friend bool operator<(const Portrait& a, const Portrait& b) {
        return std::pair(a.preperiod, a.period) < std::pair(b.preperiod, b.period);
    }
    std::string to_string() const {
        return "(" + std::to_string(preperiod) + "," + std::to_string(period) + ")";
    }
};

struct Classification {
    enum class Kind { StronglyAdmissible, Admissible, NearlyAdmissible, Invalid };
    Kind kind = Kind::Invalid;
    std::string reason;                  // set for Invalid
    std::vector<std::string> witnesses;  // offending vertices / cycle members
    bool unrealizable_fixed_points = false;  // more fixed points than R(1) = 2

    bool admissible_or_stronger() const {
        return kind == Kind::StronglyAdmissible || kind == Kind::Admissible;
    }
    std::string kind_name() const {
        switch (kind) {
            case Kind::StronglyAdmissible: return "StronglyAdmissible";
            case Kind::Admissible: return "Admissible";
            case Kind::NearlyAdmissible: return "NearlyAdmissible";
            default: return "Invalid";
        }
    }
};

class PortraitGraph {
public:
    PortraitGraph() = default;

    // Build from an edge list; every vertex must appear as a source exactly
    // once (total successor map) and no vertex may have three preimages.
    static PortraitGraph from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
        PortraitGraph g;
        std::set<std::string> all;
        for (const auto& [a, b] : edges) {
            validate_name(a);
            validate_name(b);
            all.insert(a);
            all.insert(b);
        }
        g.names_.assign(all.begin(), all.end());
        for (int i = 0; i < g.size(); ++i) g.index_[g.names_[static_cast<std::size_t>(i)]] = i;
        g.succ_.assign(g.names_.size(), -1);
        for (const auto& [a, b] : edges) {
            int ia = g.index_.at(a);
            if (g.succ_[static_cast<std::size_t>(ia)] != -1)
                throw std::invalid_argument("vertex has out-degree > 1: " + a);
            g.succ_[static_cast<std::size_t>(ia)] = g.index_.at(b);
        }
        for (int v = 0; v < g.size(); ++v)
            if (g.succ_[static_cast<std::size_t>(v)] == -1)
                throw std::invalid_argument("vertex has out-degree 0: " + g.names_[static_cast<std::size_t>(v)]);
        g.finish_negations();
        return g;
    }

    // Parse the "a -> b" line format.
    static PortraitGraph parse(const std::string& text) {
        std::vector<std::pair<std::string, std::string>> edges;
        std::istringstream in(text);
        std::string line;
        long lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::size_t arrow = line.find("->");
            std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            if (arrow == std::string::npos || line.find("->", arrow + 2) != std::string::npos)
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": expected exactly one '->'");
            std::string lhs = trim(line.substr(0, arrow));
            std::string rhs = trim(line.substr(arrow + 2));
            if (lhs.empty() || rhs.empty())
                throw std::invalid_argument("line " + std::to_string(lineno) + ": missing vertex name");
            edges.emplace_back(lhs, rhs);
        }
        return from_edges(edges);
    }

    // One "name -> name" line per vertex, sorted; parses back to an equal graph.
    std::string serialize() const {
        std::string out;
        for (int v = 0; v < size(); ++v)
            out += names_[static_cast<std::size_t>(v)] + " -> " + name(succ(v)) + "\n";
        return out;
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("no such vertex: " + name);
        return it->second;
    }
    bool has_vertex(const std::string& name) const { return index_.count(name) > 0; }

    int succ(int v) const { return succ_.at(static_cast<std::size_t>(v)); }
    int in_degree(int v) const { return indeg_.at(static_cast<std::size_t>(v)); }

    // Negation partner; the lone preimage of an in-degree-1 vertex is its own
    // negation (ramified convention).
    int negation(int v) const {
        int p = neg_.at(static_cast<std::size_t>(v));
        return p < 0 ? v : p;
    }
    bool is_ramified(int v) const { return neg_.at(static_cast<std::size_t>(v)) < 0 && indeg_[static_cast<std::size_t>(succ(v))] == 1; }

    // ---- structure ----------------------------------------------------------

    Portrait portrait(int v) const {
        std::map<int, long> at;
        long step = 0;
        int cur = v;
        while (!at.count(cur)) {
            at[cur] = step++;
            cur = succ(cur);
        }
        return Portrait{at[cur], step - at[cur]};
    }
    Portrait portrait(const std::string& vname) const { return portrait(index_of(vname)); }

    // All cycles, each listed in successor order from its smallest-name vertex,
    // sorted by (length, first name).
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(names_.size(), 0);
        for (int v = 0; v < size(); ++v) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            // walk to the cycle this component drains into
            std::map<int, long> at;
            int cur = v;
            while (!at.count(cur) && !seen[static_cast<std::size_t>(cur)]) {
                at[cur] = 1;
                cur = succ(cur);
            }
            bool fresh_cycle = at.count(cur) > 0;  // found an unvisited cycle
            for (const auto& [w, unused] : at) seen[static_cast<std::size_t>(w)] = 1;
            if (!fresh_cycle) continue;
            std::vector<int> cyc{cur};
            for (int w = succ(cur); w != cur; w = succ(w)) cyc.push_back(w);
            std::size_t best = 0;
            for (std::size_t i = 1; i < cyc.size(); ++i)
                if (name(cyc[i]) < name(cyc[best])) best = i;
            std::rotate(cyc.begin(), cyc.begin() + static_cast<long>(best), cyc.end());
            out.push_back(std::move(cyc));
        }
        std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return name(a[0]) < name(b[0]);
        });
        return out;
    }

    // Connected components (successor edges taken undirected), each sorted by
    // vertex index; components ordered by smallest name.
    std::vector<std::vector<int>> components() const {
        std::vector<int> comp(names_.size(), -1);
        int nc = 0;
        for (int v = 0; v < size(); ++v) {
            if (comp[static_cast<std::size_t>(v)] != -1) continue;
            std::vector<int> stack{v};
            comp[static_cast<std::size_t>(v)] = nc;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                auto push = [&](int w) {
                    if (comp[static_cast<std::size_t>(w)] == -1) {
                        comp[static_cast<std::size_t>(w)] = nc;
                        stack.push_back(w);
                    }
                };
                push(succ(u));
                for (int w = 0; w < size(); ++w)
                    if (succ(w) == u) push(w);
            }
            ++nc;
        }
        std::vector<std::vector<int>> out(static_cast<std::size_t>(nc));
        for (int v = 0; v < size(); ++v) out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
        std::sort(out.begin(), out.end(),
                  [&](const auto& a, const auto& b) { return name(a[0]) < name(b[0]); });
        return out;
    }

    // Smallest subgraph vertex set containing S and closed under the image map
    // and negation (the +-orbit closure of S).
    std::set<int> closure(const std::set<int>& seeds) const {
        std::set<int> out = seeds;
        std::vector<int> stack(seeds.begin(), seeds.end());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : {succ(v), negation(v)})
                if (out.insert(w).second) stack.push_back(w);
        }
        return out;
    }

    // Forward orbit of a single vertex (no negation), cycle included once.
    std::vector<int> orbit(int v) const {
        std::vector<int> out;
        std::set<int> seen;
        int cur = v;
        while (seen.insert(cur).second) {
            out.push_back(cur);
            cur = succ(cur);
        }
        return out;
    }

    // Induced subgraph on a closed vertex set (every successor must stay
    // inside); vertex names are preserved.
    PortraitGraph induced(const std::set<int>& verts) const {
        std::vector<std::pair<std::string, std::string>> edges;
        for (int v : verts) {
            if (!verts.count(succ(v)))
                throw std::invalid_argument("vertex set not closed under the image map: " + name(v));
            edges.emplace_back(name(v), name(succ(v)));
        }
        return from_edges(edges);
    }

    // ---- admissibility -------------------------------------------------------

    Classification classify() const {
        Classification c;
        std::vector<std::string> indeg1;
        for (int v = 0; v < size(); ++v)
            if (in_degree(v) == 1) indeg1.push_back(name(v));
        bool condition_b = true;
        std::map<long, long> cycle_counts;
        for (const auto& cyc : cycles()) ++cycle_counts[static_cast<long>(cyc.size())];
        std::string b_reason;
        std::vector<std::string> b_witnesses;
        for (const auto& [len, count] : cycle_counts) {
            if (len >= 2 && count > cycle_count_bound(len)) {
                condition_b = false;
                b_reason = "condition (b): " + std::to_string(count) + " cycles of length " +
                           std::to_string(len) + " exceeds R(" + std::to_string(len) + ") = " +
                           std::to_string(cycle_count_bound(len));
                for (const auto& cyc : cycles())
                    if (static_cast<long>(cyc.size()) == len) b_witnesses.push_back(name(cyc[0]));
            }
        }
        long fixed = cycle_counts.count(1) ? cycle_counts[1] : 0;
        c.unrealizable_fixed_points = fixed > cycle_count_bound(1);

        if (!condition_b) {
            c.kind = Classification::Kind::Invalid;
            c.reason = b_reason;
            c.witnesses = b_witnesses;
            return c;
        }
        if (indeg1.size() > 1) {
            c.kind = Classification::Kind::Invalid;
            c.reason = "condition (a): " + std::to_string(indeg1.size()) + " vertices of in-degree 1";
            c.witnesses = indeg1;
            return c;
        }
        if (indeg1.size() == 1) {
            c.kind = Classification::Kind::NearlyAdmissible;
            c.reason = "one vertex of in-degree 1; its preimage is ramified (-P = P)";
            c.witnesses = indeg1;
            return c;
        }
        c.kind = (fixed == 0 || fixed == 2) ? Classification::Kind::StronglyAdmissible
                                            : Classification::Kind::Admissible;
        return c;
    }

    friend bool operator==(const PortraitGraph& a, const PortraitGraph& b) {
        return a.names_ == b.names_ && a.succ_ == b.succ_;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<int> succ_;
    std::vector<int> neg_;    // partner index, or -1 (self / sole preimage)
    std::vector<int> indeg_;

    static std::string trim(const std::string& s) {
        std::size_t a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        std::size_t b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    static void validate_name(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty vertex name");
        for (char ch : s) {
            bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '_' || ch == '-' || ch == '/';
            if (!ok) throw std::invalid_argument("bad character in vertex name: " + s);
        }
    }

    void finish_negations() {
        indeg_.assign(names_.size(), 0);
        for (int v = 0; v < size(); ++v) ++indeg_[static_cast<std::size_t>(succ(v))];
        neg_.assign(names_.size(), -1);
        std::vector<std::vector<int>> preimages(names_.size());
        for (int v = 0; v < size(); ++v) preimages[static_cast<std::size_t>(succ(v))].push_back(v);
        for (int v = 0; v < size(); ++v) {
            const auto& pre = preimages[static_cast<std::size_t>(v)];
            if (pre.size() > 2)
                throw std::invalid_argument("vertex has in-degree > 2: " + name(v));
            if (pre.size() == 2) {
                neg_[static_cast<std::size_t>(pre[0])] = pre[1];
                neg_[static_cast<std::size_t>(pre[1])] = pre[0];
            }
        }
    }
};

}  // namespace dynmod
