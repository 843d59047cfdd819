#pragma once

// JSON views of graphs and curve systems. Object keys come out sorted (the
// underlying JSON type keeps objects in key order), so identical inputs give
// byte-identical output.

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dynmod/curve_system.hpp"
#include "dynmod/generators.hpp"
#include "dynmod/portrait_graph.hpp"

namespace dynmod {

inline nlohmann::json portrait_to_json(const Portrait& p) {
    return nlohmann::json::array({p.preperiod, p.period});
}

inline nlohmann::json graph_to_json(const PortraitGraph& g) {
    nlohmann::json j;
    j["vertices"] = g.names();
    nlohmann::json edges = nlohmann::json::array();
    for (int v = 0; v < g.size(); ++v)
        edges.push_back(nlohmann::json::array({g.name(v), g.name(g.succ(v))}));
    j["edges"] = edges;
    nlohmann::json negation = nlohmann::json::array();
    std::set<std::pair<std::string, std::string>> pairs;
    for (int v = 0; v < g.size(); ++v) {
        std::string a = g.name(v), b = g.name(g.negation(v));
        if (b < a) std::swap(a, b);
        pairs.emplace(a, b);
    }
    for (const auto& [a, b] : pairs) negation.push_back(nlohmann::json::array({a, b}));
    j["negation"] = negation;
    j["classification"] = g.classify().kind_name();
    nlohmann::json portraits = nlohmann::json::object();
    for (int v = 0; v < g.size(); ++v) portraits[g.name(v)] = portrait_to_json(g.portrait(v));
    j["portraits"] = portraits;
    return j;
}

inline PortraitGraph graph_from_json(const nlohmann::json& j) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    return PortraitGraph::from_edges(edges);
}

inline nlohmann::json classification_to_json(const Classification& c) {
    nlohmann::json j;
    j["kind"] = c.kind_name();
    j["reason"] = c.reason;
    j["witnesses"] = c.witnesses;
    j["unrealizable_fixed_points"] = c.unrealizable_fixed_points;
    return j;
}

inline nlohmann::json generators_to_json(const PortraitGraph& g, const GeneratorData& data) {
    nlohmann::json arr = nlohmann::json::array();
    for (const GeneratorEntry& e : data.entries) {
        nlohmann::json j;
        j["name"] = g.name(e.vertex);
        j["portrait"] = portrait_to_json(e.portrait);
        j["attached"] = e.attached;
        if (e.attached) {
            j["kappa"] = e.kappa;
            j["j"] = e.j;
            j["lambda"] = e.lambda;
        }
        arr.push_back(j);
    }
    return arr;
}

inline nlohmann::json inequation_to_json(const Inequation& q) {
    nlohmann::json j;
    j["kind"] = q.kind_name();
    j["i"] = q.i;
    if (q.kind == Inequation::Kind::DisjointOrbit) {
        j["j"] = q.j;
        j["k"] = q.k;
    } else if (q.m >= 0) {
        j["m"] = q.m;
    } else {
        j["n"] = q.n;
    }
    j["poly"] = q.poly.to_json();
    return j;
}

inline nlohmann::json curve_to_json(const CurveSystem& sys) {
    nlohmann::json j;
    j["variables"] = sys.variables;
    j["generators"] = generators_to_json(sys.graph, sys.gens);
    nlohmann::json eqs = nlohmann::json::array();
    for (const MultiPoly& e : sys.equations) eqs.push_back(e.to_json());
    j["equations"] = eqs;
    nlohmann::json ineqs = nlohmann::json::array();
    for (const Inequation& q : sys.inequations) ineqs.push_back(inequation_to_json(q));
    j["inequations"] = ineqs;
    j["pi_degree"] = to_string(sys.pi_degree);
    j["graph"] = graph_to_json(sys.graph);
    j["note"] = sys.note;
    return j;
}

inline CurveSystem curve_from_json(const nlohmann::json& j) {
    CurveSystem sys;
    sys.variables = j.at("variables").get<std::vector<std::string>>();
    for (const auto& e : j.at("equations")) sys.equations.push_back(MultiPoly::from_json(e));
    for (const auto& q : j.at("inequations")) {
        Inequation out;
        std::string kind = q.at("kind").get<std::string>();
        out.kind = kind == "DisjointOrbit" ? Inequation::Kind::DisjointOrbit
                                           : Inequation::Kind::RightPortrait;
        out.i = q.at("i").get<int>();
        if (q.contains("j")) out.j = q.at("j").get<int>();
        if (q.contains("k")) out.k = q.at("k").get<long>();
        if (q.contains("m")) out.m = q.at("m").get<long>();
        if (q.contains("n")) out.n = q.at("n").get<long>();
        out.poly = MultiPoly::from_json(q.at("poly"));
        sys.inequations.push_back(std::move(out));
    }
    sys.pi_degree = Integer(j.at("pi_degree").get<std::string>());
    if (j.contains("graph")) sys.graph = graph_from_json(j.at("graph"));
    if (j.contains("note")) sys.note = j.at("note").get<std::string>();
    if (j.contains("generators") && sys.graph.size() > 0) {
        for (const auto& e : j.at("generators")) {
            GeneratorEntry entry;
            entry.vertex = sys.graph.index_of(e.at("name").get<std::string>());
            entry.portrait = Portrait{e.at("portrait").at(0).get<long>(),
                                      e.at("portrait").at(1).get<long>()};
            entry.attached = e.at("attached").get<bool>();
            if (entry.attached) {
                entry.kappa = e.at("kappa").get<long>();
                entry.j = e.at("j").get<int>();
                entry.lambda = e.at("lambda").get<long>();
            }
            sys.gens.entries.push_back(entry);
            sys.generator_names.push_back(e.at("name").get<std::string>());
        }
    }
    return sys;
}

}  // namespace dynmod
