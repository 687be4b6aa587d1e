// fpart: partitions of {H,J}-free graphs, universal cographs, tournament
// partitions, and locally-split random constructions, with JSON artifacts.
//
// Exit codes: 0 ok, 1 internal error, 2 hypothesis violation (witness
// emitted), 3 budget refusal, 4 input/schema error.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fpart/enumerate.hpp"
#include "fpart/json_io.hpp"

using namespace fpart;

namespace {

// Whether hypothesis-violation witnesses should serialize their pattern as a
// graph ("edges") or a tournament ("arcs").
std::string g_witness_kind = "graph";

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("HJ_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw InputError("HJ_SEED must be a non-negative integer");
        }
    }
    return cli_seed;
}

Json witness_json(const HypothesisError& e) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["error"] = "hypothesis_violation";
    j["message"] = e.what();
    if (e.has_witness()) {
        j["pattern_name"] = e.witness_pattern_name;
        Json pat;
        pat["n"] = e.witness_pattern_n;
        Json links = Json::array();
        for (auto [u, v] : e.witness_pattern_edges) links.push_back({u, v});
        pat[g_witness_kind == "tournament" ? "arcs" : "edges"] = std::move(links);
        j["pattern"] = std::move(pat);
        j["map"] = e.witness_map;
    }
    return j;
}

Cotree load_cotree(const std::string& path) {
    Json j = load_json_file(path);
    if (j.is_object() && j.contains("cotree")) j = j["cotree"];
    if (j.is_object() && j.contains("op")) return cotree_from_json(j);
    Graph g = graph_from_json(j);
    auto t = is_cograph(g);
    if (!t) throw InputError(path + ": graph is not a cograph");
    return *t;
}

std::vector<Cotree> load_cotree_patterns(const std::string& path) {
    Json j = load_json_file(path);
    const Json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("patterns")) throw InputError(path + ": missing \"patterns\" array");
        arr = &j["patterns"];
    }
    if (!arr->is_array() || arr->empty())
        throw InputError(path + ": expected a nonempty pattern array");
    std::vector<Cotree> out;
    for (const auto& p : *arr) {
        if (p.is_object() && p.contains("op")) {
            out.push_back(cotree_from_json(p));
        } else {
            Graph g = graph_from_json(p);
            auto t = is_cograph(g);
            if (!t) throw InputError(path + ": pattern graph is not a cograph");
            out.push_back(*t);
        }
    }
    return out;
}

Rational parse_epsilon(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) throw InputError("--epsilon must be a fraction like 1/7");
    try {
        return Rational{std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
    } catch (const InputError&) {
        throw;
    } catch (...) {
        throw InputError("--epsilon must be a fraction like 1/7");
    }
}

// ---- subcommand bodies -------------------------------------------------------

void run_partition(const std::string& graph_path, const std::string& h_path,
                   const std::string& j_path, const std::string& mode,
                   const std::string& out_path, const std::string& dot_path) {
    Graph g = graph_from_json(load_json_file(graph_path));
    Graph h = pattern_graph_from_json(load_json_file(h_path));
    Graph j = pattern_graph_from_json(load_json_file(j_path));

    Json out;
    out["schema_version"] = kSchemaVersion;
    out["mode"] = mode;
    out["graph_n"] = g.n();
    if (mode == "pair") {
        TwoGraphsResult res = two_graphs_partition(g, h, j);
        if (!verify_partition(g, res.patterns, res.partition).valid)
            throw std::logic_error("partition failed its own verification; not emitting");
        out["patterns"] = Json::array();
        for (const auto& p : res.patterns) out["patterns"].push_back(graph_to_json(p));
        out["partition"] = fpartition_to_json(res.partition);
        out["normalization"] = Json{{"complemented", res.record.complemented},
                                    {"side_swapped", res.record.side_swapped},
                                    {"component_choice", res.record.component_choice},
                                    {"certificate_map", res.record.certificate_map}};
        out["class_budget"] = res.class_budget;
        out["classes_used"] = res.partition.classes.size();
    } else {
        DriverResult res = disconnected_partition(g, h, j);
        if (!verify_partition(g, res.patterns, res.partition).valid)
            throw std::logic_error("partition failed its own verification; not emitting");
        out["patterns"] = Json::array();
        for (const auto& p : res.patterns) out["patterns"].push_back(graph_to_json(p));
        out["partition"] = fpartition_to_json(res.partition);
        out["h_pattern_count"] = res.h_pattern_count;
        out["bound_product"] = res.bound_product;
        out["classes_used"] = res.partition.classes.size();
    }
    write_json_file(out_path, out);
    if (!dot_path.empty()) write_text_file(dot_path, graph_to_dot(g));
}

void run_cosplit(const std::string& graph_path, const std::string& h_path,
                 const std::string& j_path, const std::string& out_path,
                 const std::string& dot_path, int max_realize) {
    Graph g = graph_from_json(load_json_file(graph_path));
    Cotree h = load_cotree(h_path);
    Cotree j = load_cotree(j_path);

    CographSplitResult res = cograph_split(g, h, j);
    bool verified = false, skipped = false;
    if (res.htilde.leaf_count() <= max_realize && res.jtilde.leaf_count() <= max_realize) {
        Graph ht = realize(res.htilde), jt = realize(res.jtilde);
        verified = !contains_induced_in(g, res.x, ht) && !contains_induced_in(g, res.y, jt) &&
                   (res.x | res.y) == Bitset::full(g.n());
        if (!verified) throw std::logic_error("cosplit failed its own verification; not emitting");
    } else {
        skipped = true;
    }

    Json out;
    out["schema_version"] = kSchemaVersion;
    out["X"] = vertexset_to_json(res.x);
    out["Y"] = vertexset_to_json(res.y);
    out["Htilde"] = cotree_to_json(res.htilde);
    out["Jtilde"] = cotree_to_json(res.jtilde);
    out["P"] = res.p;
    out["verified"] = verified;
    out["verification_skipped"] = skipped;
    out["classes_used"] = res.base.partition.classes.size();
    write_json_file(out_path, out);
    if (!dot_path.empty()) write_text_file(dot_path, graph_to_dot(g));
}

void run_universal(const std::string& patterns_path, int p, int k, const std::string& out_path,
                   const std::string& realize_path, int max_realize) {
    std::vector<Cotree> f = load_cotree_patterns(patterns_path);
    Cotree u = universal_cograph(f, p, k);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["cotree"] = cotree_to_json(u);
    out["height"] = u.height();
    out["leaf_count"] = u.leaf_count();
    out["P"] = p;
    out["k"] = k;
    write_json_file(out_path, out);
    if (!realize_path.empty()) {
        if (u.leaf_count() > max_realize)
            throw BudgetError("universal: realized size " + std::to_string(u.leaf_count()) +
                              " exceeds --max-realize " + std::to_string(max_realize));
        write_json_file(realize_path, graph_to_json(realize(u)));
    }
}

void run_tpartition(const std::string& t_path, const std::string& h1_path,
                    const std::string& h2_path, const std::string& out_path,
                    const std::string& dot_path) {
    Tournament g = tournament_from_json(load_json_file(t_path));
    Tournament h1 = tournament_from_json(load_json_file(h1_path));
    Tournament h2 = tournament_from_json(load_json_file(h2_path));

    TwoTournamentsResult res = two_tournaments_partition(g, h1, h2);
    if (!verify_tournament_partition(g, res.patterns, res.partition).valid)
        throw std::logic_error("tpartition failed its own verification; not emitting");

    Json out;
    out["schema_version"] = kSchemaVersion;
    out["graph_n"] = g.n();
    out["patterns"] = Json::array();
    for (const auto& p : res.patterns) out["patterns"].push_back(tournament_to_json(p));
    out["partition"] = tournament_partition_to_json(res.partition);
    out["normalization"] = Json{{"reversed", res.record.reversed},
                                {"certificate_map", res.record.certificate_map}};
    out["class_budget"] = res.class_budget;
    out["classes_used"] = res.partition.classes.size();
    write_json_file(out_path, out);
    if (!dot_path.empty()) write_text_file(dot_path, tournament_to_dot(g));
}

void run_thero(const std::string& t_path, const std::string& h1_path, const std::string& h2_path,
               int c, const std::string& out_path) {
    Tournament g = tournament_from_json(load_json_file(t_path));
    Tournament h1 = tournament_from_json(load_json_file(h1_path));
    Tournament h2 = tournament_from_json(load_json_file(h2_path));

    HeroColoring res = hero_color(g, h1, h2, c);
    for (const auto& cls : res.classes)
        if (!is_transitive_set(g, cls))
            throw std::logic_error("thero produced a non-transitive class; not emitting");

    Json out;
    out["schema_version"] = kSchemaVersion;
    out["base_partition"] = tournament_partition_to_json(res.base);
    out["classes"] = Json::array();
    for (const auto& cls : res.classes) out["classes"].push_back(vertexset_to_json(cls));
    out["class_count"] = res.classes.size();
    out["bound"] = res.bound;
    out["c"] = c;
    write_json_file(out_path, out);
}

void run_construct(const std::string& l_path, const std::string& m_path,
                   const ConstructionParams& params, const std::string& out_path,
                   const std::string& dot_path) {
    Graph l = graph_from_json(load_json_file(l_path));
    Graph m = graph_from_json(load_json_file(m_path));
    ConstructionReport rep = construct(l, m, params);
    write_json_file(out_path, construction_report_to_json(rep));
    if (!dot_path.empty()) write_text_file(dot_path, graph_to_dot(rep.graph));
}

void run_audit(const std::string& graph_path, const std::string& l_path,
               const std::string& m_path, const std::string& mode, int r, int k,
               std::uint64_t samples, std::uint64_t seed, const std::string& out_path) {
    Graph g = graph_from_json(load_json_file(graph_path));
    Graph l = graph_from_json(load_json_file(l_path));
    Graph m = graph_from_json(load_json_file(m_path));

    Json out;
    out["schema_version"] = kSchemaVersion;
    out["mode"] = mode;
    out["seed"] = seed;
    if (mode == "local") {
        LocalSplitReport rep = audit_local_split(g, l, m, r, samples, seed);
        out["subset_size"] = rep.subset_size;
        out["exhaustive"] = rep.exhaustive;
        out["samples_run"] = rep.samples_run;
        out["counterexamples"] = rep.counterexamples;
        out["first_counterexample"] = rep.first_counterexample;
        out["pass"] = rep.counterexamples == 0;
    } else {
        DensityReport rep = audit_density(g, l, m, k, samples, seed);
        out["subset_size"] = rep.subset_size;
        out["exhaustive"] = rep.exhaustive;
        out["samples_run"] = rep.samples_run;
        out["l_missing"] = rep.l_missing;
        out["m_missing"] = rep.m_missing;
        out["first_failure"] = rep.first_failure;
        out["pass"] = rep.l_missing == 0 && rep.m_missing == 0;
    }
    write_json_file(out_path, out);
}

int run_verify(const std::string& graph_path, const std::string& tournament_path,
               const std::string& patterns_path, const std::string& partition_path,
               const std::string& out_path) {
    Json pj = load_json_file(partition_path);
    if (!tournament_path.empty()) {
        Tournament g = tournament_from_json(load_json_file(tournament_path));
        Json pats_json = load_json_file(patterns_path);
        const Json* arr = pats_json.is_object() ? &pats_json["patterns"] : &pats_json;
        if (!arr->is_array()) throw InputError("patterns: expected an array");
        std::vector<Tournament> pats;
        for (const auto& p : *arr) pats.push_back(tournament_from_json(p));
        TournamentPartition part = tournament_partition_from_json(pj, g.n());
        auto rep = verify_tournament_partition(g, pats, part);
        Json out;
        out["schema_version"] = kSchemaVersion;
        out["valid"] = rep.valid;
        if (!rep.valid) {
            out["reason"] = rep.reason;
            out["class_index"] = rep.class_index;
        }
        if (!out_path.empty()) write_json_file(out_path, out);
        std::cout << out.dump(2) << "\n";
        return rep.valid ? 0 : 2;
    }

    Graph g = graph_from_json(load_json_file(graph_path));
    std::vector<Graph> pats = patterns_from_json(load_json_file(patterns_path), "patterns");
    FPartition part = fpartition_from_json(pj, g.n());
    auto rep = verify_partition(g, pats, part);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["valid"] = rep.valid;
    if (!rep.valid) {
        const auto& v = *rep.first_violation;
        const char* kinds[] = {"overlap", "gap", "singleton_size", "pattern_found"};
        out["violation"] = Json{{"kind", kinds[static_cast<int>(v.kind)]},
                                {"class_index", v.class_index},
                                {"vertex", v.vertex}};
        if (v.witness)
            out["violation"]["witness"] =
                Json{{"pattern", graph_to_json(v.witness->pattern)}, {"map", v.witness->map}};
    }
    if (!out_path.empty()) write_json_file(out_path, out);
    std::cout << out.dump(2) << "\n";
    return rep.valid ? 0 : 2;
}

void run_oracle_split(const std::string& graph_path, const std::string& h1_path,
                      const std::string& h2_path, int max_n, const std::string& out_path) {
    Graph g = graph_from_json(load_json_file(graph_path));
    Graph h1 = pattern_graph_from_json(load_json_file(h1_path));
    Graph h2 = pattern_graph_from_json(load_json_file(h2_path));
    auto w = is_split(g, h1, h2, max_n);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["split"] = w.has_value();
    if (w) {
        out["X"] = vertexset_to_json(w->x);
        out["Y"] = vertexset_to_json(w->y);
    }
    write_json_file(out_path, out);
}

void run_oracle_exists(const std::string& graph_path, const std::string& patterns_path, int k,
                       std::uint64_t budget, bool no_singletons, bool fixed,
                       const std::string& out_path) {
    Graph g = graph_from_json(load_json_file(graph_path));
    std::vector<Graph> pats = patterns_from_json(load_json_file(patterns_path), "patterns");
    ExistsOptions opt;
    opt.budget = budget;
    opt.allow_singletons = !no_singletons;
    opt.fixed_assignment = fixed;
    auto p = exists_partition(g, pats, k, opt);
    if (p && !verify_partition(g, pats, *p).valid)
        throw std::logic_error("oracle partition failed verification; not emitting");
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["exists"] = p.has_value();
    out["k"] = k;
    if (p) out["partition"] = fpartition_to_json(*p);
    write_json_file(out_path, out);
}

void run_oracle_contains(const std::string& graph_path, const std::string& pattern_path,
                         const std::string& out_path) {
    Graph g = graph_from_json(load_json_file(graph_path));
    Graph h = pattern_graph_from_json(load_json_file(pattern_path));
    auto emb = contains_induced(g, h);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["contains"] = emb.has_value();
    if (emb) out["embedding"] = Json{{"pattern", graph_to_json(emb->pattern)}, {"map", emb->map}};
    write_json_file(out_path, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(F,P)-partitions of {H,J}-free graphs, universal cographs, tournament "
                 "partitions, and locally split random constructions"};
    app.require_subcommand(1);

    std::string graph_path, h_path, j_path, out_path, dot_path, mode = "pair";
    std::string tournament_path, patterns_path, partition_path, realize_path;
    std::string l_path, m_path, epsilon_text;
    int p_value = 1, k_value = 1, c_value = 1, r_value = 5, max_n = 30;
    int max_realize = 100000;
    std::uint64_t seed = 0, samples = 1000, budget = 100'000'000;
    ConstructionParams cparams;

    auto* partition = app.add_subcommand("partition", "partition a {H,J}-free graph");
    partition->add_option("--graph", graph_path)->required();
    partition->add_option("--H", h_path)->required();
    partition->add_option("--J", j_path)->required();
    partition->add_option("--mode", mode)->check(CLI::IsMember({"pair", "components"}));
    partition->add_option("--out", out_path)->required();
    partition->add_option("--dot", dot_path);
    partition->callback(
        [&] { run_partition(graph_path, h_path, j_path, mode, out_path, dot_path); });

    auto* cosplit = app.add_subcommand("cosplit", "split a {H,J}-free graph for cograph patterns");
    cosplit->add_option("--graph", graph_path)->required();
    cosplit->add_option("--H", h_path)->required();
    cosplit->add_option("--J", j_path)->required();
    cosplit->add_option("--out", out_path)->required();
    cosplit->add_option("--dot", dot_path);
    cosplit->add_option("--max-realize", max_realize);
    cosplit->callback(
        [&] { run_cosplit(graph_path, h_path, j_path, out_path, dot_path, max_realize); });

    auto* universal = app.add_subcommand("universal", "build an (F,P)-universal cograph");
    universal->add_option("--patterns", patterns_path)->required();
    universal->add_option("--P", p_value)->required();
    universal->add_option("--k", k_value)->required();
    universal->add_option("--out", out_path)->required();
    universal->add_option("--realize", realize_path);
    universal->add_option("--max-realize", max_realize);
    universal->callback([&] {
        run_universal(patterns_path, p_value, k_value, out_path, realize_path, max_realize);
    });

    auto* tpartition = app.add_subcommand("tpartition", "partition an (H1=>H2)-free tournament");
    tpartition->add_option("--tournament", tournament_path)->required();
    tpartition->add_option("--H1", h_path)->required();
    tpartition->add_option("--H2", j_path)->required();
    tpartition->add_option("--out", out_path)->required();
    tpartition->add_option("--dot", dot_path);
    tpartition->callback([&] {
        g_witness_kind = "tournament";
        run_tpartition(tournament_path, h_path, j_path, out_path, dot_path);
    });

    auto* thero = app.add_subcommand("thero", "hero coloring of an (H1=>H2)-free tournament");
    thero->add_option("--tournament", tournament_path)->required();
    thero->add_option("--H1", h_path)->required();
    thero->add_option("--H2", j_path)->required();
    thero->add_option("--c", c_value)->required();
    thero->add_option("--out", out_path)->required();
    thero->callback([&] {
        g_witness_kind = "tournament";
        run_thero(tournament_path, h_path, j_path, c_value, out_path);
    });

    auto* construct_cmd = app.add_subcommand("construct", "locally split random construction");
    construct_cmd->add_option("--L", l_path)->required();
    construct_cmd->add_option("--M", m_path)->required();
    construct_cmd->add_option("--n", cparams.n)->required();
    construct_cmd->add_option("--r", cparams.r)->required();
    construct_cmd->add_option("--k", cparams.k)->required();
    construct_cmd->add_option("--epsilon", epsilon_text);
    construct_cmd->add_option("--seed", seed);
    construct_cmd->add_option("--max-expected", cparams.max_expected_hyperedges);
    construct_cmd->add_option("--out", out_path)->required();
    construct_cmd->add_option("--dot", dot_path);
    construct_cmd->callback([&] {
        cparams.seed = effective_seed(seed);
        if (!epsilon_text.empty()) cparams.epsilon = parse_epsilon(epsilon_text);
        run_construct(l_path, m_path, cparams, out_path, dot_path);
    });

    auto* audit = app.add_subcommand("audit", "sampled audits of a constructed graph");
    audit->add_option("--graph", graph_path)->required();
    audit->add_option("--L", l_path)->required();
    audit->add_option("--M", m_path)->required();
    audit->add_option("--mode", mode)->required()->check(CLI::IsMember({"local", "density"}));
    audit->add_option("--r", r_value);
    audit->add_option("--k", k_value);
    audit->add_option("--samples", samples);
    audit->add_option("--seed", seed);
    audit->add_option("--out", out_path)->required();
    audit->callback([&] {
        run_audit(graph_path, l_path, m_path, mode, r_value, k_value, samples,
                  effective_seed(seed), out_path);
    });

    int verify_exit = 0;
    auto* verify = app.add_subcommand("verify", "verify a partition artifact");
    verify->add_option("--graph", graph_path);
    verify->add_option("--tournament", tournament_path);
    verify->add_option("--patterns", patterns_path)->required();
    verify->add_option("--partition", partition_path)->required();
    verify->add_option("--out", out_path);
    verify->callback([&] {
        if (graph_path.empty() == tournament_path.empty())
            throw InputError("verify: pass exactly one of --graph or --tournament");
        verify_exit =
            run_verify(graph_path, tournament_path, patterns_path, partition_path, out_path);
    });

    auto* oracle = app.add_subcommand("oracle", "brute-force ground-truth oracles");
    oracle->require_subcommand(1);

    auto* osplit = oracle->add_subcommand("split", "exhaustive {H1,H2}-split search");
    osplit->add_option("--graph", graph_path)->required();
    osplit->add_option("--H1", h_path)->required();
    osplit->add_option("--H2", j_path)->required();
    osplit->add_option("--max-n", max_n);
    osplit->add_option("--out", out_path)->required();
    osplit->callback([&] { run_oracle_split(graph_path, h_path, j_path, max_n, out_path); });

    bool no_singletons = false, fixed_assignment = false;
    auto* oexists = oracle->add_subcommand("exists", "exact (F,k)-partition search");
    oexists->add_option("--graph", graph_path)->required();
    oexists->add_option("--patterns", patterns_path)->required();
    oexists->add_option("--k", k_value)->required();
    oexists->add_option("--budget", budget);
    oexists->add_flag("--no-singletons", no_singletons);
    oexists->add_flag("--fixed", fixed_assignment);
    oexists->add_option("--out", out_path)->required();
    oexists->callback([&] {
        run_oracle_exists(graph_path, patterns_path, k_value, budget, no_singletons,
                          fixed_assignment, out_path);
    });

    auto* ocontains = oracle->add_subcommand("contains", "first induced embedding");
    ocontains->add_option("--graph", graph_path)->required();
    ocontains->add_option("--pattern", h_path)->required();
    ocontains->add_option("--out", out_path)->required();
    ocontains->callback([&] { run_oracle_contains(graph_path, h_path, out_path); });

    try {
        app.parse(argc, argv);
        return verify_exit;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        Json w = witness_json(e);
        if (!out_path.empty()) {
            try {
                write_json_file(out_path, w);
            } catch (...) {
            }
        }
        std::cerr << w.dump(2) << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
