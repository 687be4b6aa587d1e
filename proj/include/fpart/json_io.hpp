#pragma once

#include <fstream>
#include <set>
#include <string>

#include "json.hpp"

#include "fpart/cograph.hpp"
#include "fpart/construction.hpp"
#include "fpart/graph.hpp"
#include "fpart/oracles.hpp"
#include "fpart/partition_engine.hpp"
#include "fpart/tournament.hpp"

namespace fpart {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline void check_schema_version(const Json& j, const char* what) {
    if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
        throw InputError(std::string(what) + ": unsupported schema_version");
}

inline int get_nonneg_int(const Json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
        throw InputError(std::string(what) + ": missing or invalid \"" + key + "\"");
    return j[key].get<int>();
}

}  // namespace detail

// ---- graphs: {"n": int, "edges": [[u,v],...]}, 0-based, u<v, no duplicates --

inline Json graph_to_json(const Graph& g) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = g.n();
    j["edges"] = Json::array();
    for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
    return j;
}

inline Graph graph_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("graph: expected a JSON object");
    detail::check_schema_version(j, "graph");
    const int n = detail::get_nonneg_int(j, "n", "graph");
    Graph g(n);
    if (!j.contains("edges") || !j["edges"].is_array())
        throw InputError("graph: missing \"edges\" array");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw InputError("graph: each edge must be a pair of integers");
        const int u = e[0].get<int>(), v = e[1].get<int>();
        if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("graph: edge vertex out of range");
        if (u >= v) throw InputError("graph: edges must satisfy u < v");
        if (!seen.insert({u, v}).second) throw InputError("graph: duplicate edge");
        g.add_edge(u, v);
    }
    return g;
}

// ---- tournaments: {"n": int, "arcs": [[u,v],...]} meaning u beats v --------

inline Json tournament_to_json(const Tournament& t) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = t.n();
    j["arcs"] = Json::array();
    for (auto [u, v] : t.arcs()) j["arcs"].push_back({u, v});
    return j;
}

inline Tournament tournament_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("tournament: expected a JSON object");
    detail::check_schema_version(j, "tournament");
    const int n = detail::get_nonneg_int(j, "n", "tournament");
    if (!j.contains("arcs") || !j["arcs"].is_array())
        throw InputError("tournament: missing \"arcs\" array");
    std::vector<std::pair<int, int>> arcs;
    for (const auto& a : j["arcs"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() ||
            !a[1].is_number_integer())
            throw InputError("tournament: each arc must be a pair of integers");
        arcs.emplace_back(a[0].get<int>(), a[1].get<int>());
    }
    try {
        return Tournament::from_arcs(n, arcs);
    } catch (const InputError& e) {
        throw InputError(std::string("tournament: ") + e.what());
    }
}

// ---- cotrees: {"op":"leaf"} | {"op":"union"|"join","children":[...]} -------

inline Json cotree_to_json(const Cotree& t) {
    Json j;
    switch (t.op()) {
        case Cotree::Op::Leaf:
            j["op"] = "leaf";
            break;
        case Cotree::Op::Union:
            j["op"] = "union";
            break;
        case Cotree::Op::Join:
            j["op"] = "join";
            break;
    }
    if (t.op() != Cotree::Op::Leaf) {
        j["children"] = Json::array();
        for (const auto& c : t.children()) j["children"].push_back(cotree_to_json(c));
    }
    return j;
}

inline Cotree cotree_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
        throw InputError("cotree: expected an object with an \"op\" field");
    const std::string op = j["op"].get<std::string>();
    if (op == "leaf") return Cotree::leaf();
    if (op != "union" && op != "join") throw InputError("cotree: unknown op \"" + op + "\"");
    if (!j.contains("children") || !j["children"].is_array() || j["children"].empty())
        throw InputError("cotree: internal node needs a nonempty \"children\" array");
    std::vector<Cotree> kids;
    for (const auto& c : j["children"]) kids.push_back(cotree_from_json(c));
    return op == "union" ? Cotree::make_union(std::move(kids))
                         : Cotree::make_join(std::move(kids));
}

// Pattern entries may be graphs or cotrees; cotrees are realized.
inline Graph pattern_graph_from_json(const Json& j) {
    if (j.is_object() && j.contains("op")) return realize(cotree_from_json(j));
    return graph_from_json(j);
}

inline std::vector<Graph> patterns_from_json(const Json& j, const char* what) {
    const Json* arr = &j;
    if (j.is_object()) {
        detail::check_schema_version(j, what);
        if (!j.contains("patterns"))
            throw InputError(std::string(what) + ": missing \"patterns\" array");
        arr = &j["patterns"];
    }
    if (!arr->is_array() || arr->empty())
        throw InputError(std::string(what) + ": expected a nonempty array of patterns");
    std::vector<Graph> out;
    for (const auto& p : *arr) out.push_back(pattern_graph_from_json(p));
    return out;
}

// ---- partitions -------------------------------------------------------------

inline Json vertexset_to_json(const Bitset& b) {
    Json arr = Json::array();
    for (int v : b) arr.push_back(v);
    return arr;
}

inline Bitset vertexset_from_json(const Json& j, int n, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + ": expected a vertex array");
    Bitset b(n);
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= n)
            throw InputError(std::string(what) + ": vertex out of range");
        b.set(v.get<int>());
    }
    return b;
}

inline Json fpartition_to_json(const FPartition& p) {
    Json j;
    j["classes"] = Json::array();
    for (const auto& cls : p.classes) {
        Json c;
        c["vertices"] = vertexset_to_json(cls.vertices);
        if (cls.certificate.kind == Certificate::Kind::Singleton)
            c["certificate"] = "singleton";
        else
            c["certificate"] = Json{{"avoids", cls.certificate.pattern}};
        j["classes"].push_back(std::move(c));
    }
    return j;
}

inline FPartition fpartition_from_json(const Json& j, int n) {
    const Json* body = &j;
    if (j.is_object() && j.contains("partition")) body = &j["partition"];
    if (!body->is_object() || !body->contains("classes") || !(*body)["classes"].is_array())
        throw InputError("partition: missing \"classes\" array");
    FPartition p;
    for (const auto& c : (*body)["classes"]) {
        if (!c.is_object() || !c.contains("vertices") || !c.contains("certificate"))
            throw InputError("partition: class needs \"vertices\" and \"certificate\"");
        FPartition::ClassEntry entry;
        entry.vertices = vertexset_from_json(c["vertices"], n, "partition");
        const Json& cert = c["certificate"];
        if (cert.is_string() && cert.get<std::string>() == "singleton")
            entry.certificate = Certificate::singleton();
        else if (cert.is_object() && cert.contains("avoids") &&
                 cert["avoids"].is_number_integer())
            entry.certificate = Certificate::avoids(cert["avoids"].get<int>());
        else
            throw InputError("partition: certificate must be \"singleton\" or {\"avoids\": i}");
        p.classes.push_back(std::move(entry));
    }
    return p;
}

inline Json tournament_partition_to_json(const TournamentPartition& p) {
    Json j;
    j["classes"] = Json::array();
    for (const auto& cls : p.classes) {
        Json c;
        c["vertices"] = vertexset_to_json(cls.vertices);
        switch (cls.certificate.kind) {
            case TournamentCertificate::Kind::Singleton:
                c["certificate"] = "singleton";
                break;
            case TournamentCertificate::Kind::Transitive:
                c["certificate"] = "transitive";
                break;
            case TournamentCertificate::Kind::Avoids:
                c["certificate"] = Json{{"avoids", cls.certificate.pattern}};
                break;
        }
        j["classes"].push_back(std::move(c));
    }
    return j;
}

inline TournamentPartition tournament_partition_from_json(const Json& j, int n) {
    const Json* body = &j;
    if (j.is_object() && j.contains("partition")) body = &j["partition"];
    if (!body->is_object() || !body->contains("classes") || !(*body)["classes"].is_array())
        throw InputError("tournament partition: missing \"classes\" array");
    TournamentPartition p;
    for (const auto& c : (*body)["classes"]) {
        TournamentPartition::ClassEntry entry;
        entry.vertices = vertexset_from_json(c.at("vertices"), n, "tournament partition");
        const Json& cert = c.at("certificate");
        if (cert.is_string() && cert.get<std::string>() == "singleton")
            entry.certificate = TournamentCertificate::singleton();
        else if (cert.is_string() && cert.get<std::string>() == "transitive")
            entry.certificate = TournamentCertificate::transitive();
        else if (cert.is_object() && cert.contains("avoids"))
            entry.certificate = TournamentCertificate::avoids(cert["avoids"].get<int>());
        else
            throw InputError("tournament partition: bad certificate");
        p.classes.push_back(std::move(entry));
    }
    return p;
}

// ---- construction reports -----------------------------------------------------

inline Json hypergraph_to_json(const LabeledHypergraph& hg) {
    Json j;
    j["n"] = hg.n;
    j["hyperedges"] = Json::array();
    for (const auto& he : hg.hyperedges)
        j["hyperedges"].push_back(Json{{"vertices", he.vertices}, {"labels", he.labels}});
    return j;
}

inline Json construction_report_to_json(const ConstructionReport& rep) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    Rational eps = rep.params.effective_epsilon();
    j["params"] = Json{{"n", rep.params.n},
                       {"r", rep.params.r},
                       {"k", rep.params.k},
                       {"epsilon", Json{{"num", eps.num}, {"den", eps.den}}},
                       {"seed", rep.params.seed}};
    Json lib;
    lib["swapped"] = rep.library.swapped;
    lib["max_block"] = rep.library.max_block;
    lib["l_isolated"] = rep.library.l_isolated;
    lib["m_isolated"] = rep.library.m_isolated;
    lib["l_blocks"] = Json::array();
    for (const auto& b : rep.library.l_blocks) lib["l_blocks"].push_back(graph_to_json(b));
    lib["m_blocks"] = Json::array();
    for (const auto& b : rep.library.m_blocks) lib["m_blocks"].push_back(graph_to_json(b));
    j["library"] = std::move(lib);
    j["sampled_hyperedges"] = rep.sampled.hyperedges.size();
    j["initial_violations"] =
        Json{{"multilabel", rep.initial_multilabel}, {"cycles", rep.initial_cycles}};
    j["removed"] = vertexset_to_json(rep.removed);
    j["removal_rounds"] = rep.removal_rounds;
    j["surviving"] = hypergraph_to_json(rep.surviving);
    j["graph"] = graph_to_json(rep.graph);
    j["provenance"] = Json::array();
    for (const auto& [u, v, idx] : rep.provenance) j["provenance"].push_back({u, v, idx});
    if (rep.girth_value)
        j["girth"] = *rep.girth_value;
    else
        j["girth"] = nullptr;
    j["r_below_paper_assumption"] = rep.r_below_paper_assumption;
    j["removed_ratio"] = rep.removed_ratio;
    j["tiny_exact"] = Json{{"ran", rep.tiny_exact.ran},
                           {"refused", rep.tiny_exact.refused},
                           {"exists", rep.tiny_exact.exists}};
    return j;
}

// ---- DOT export ---------------------------------------------------------------

inline std::string graph_to_dot(const Graph& g, const std::string& name = "G") {
    std::string s = "graph " + name + " {\n";
    for (int v = 0; v < g.n(); ++v) s += "  " + std::to_string(v) + ";\n";
    for (auto [u, v] : g.edges())
        s += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    s += "}\n";
    return s;
}

inline std::string tournament_to_dot(const Tournament& t, const std::string& name = "T") {
    std::string s = "digraph " + name + " {\n";
    for (int v = 0; v < t.n(); ++v) s += "  " + std::to_string(v) + ";\n";
    for (auto [u, v] : t.arcs())
        s += "  " + std::to_string(u) + " -> " + std::to_string(v) + ";\n";
    s += "}\n";
    return s;
}

// ---- files --------------------------------------------------------------------

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("cannot parse " + path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open file for writing: " + path);
    out << text;
    if (!out) throw InputError("failed to write file: " + path);
}

inline void write_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace fpart
