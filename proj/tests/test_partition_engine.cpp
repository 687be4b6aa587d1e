#include <catch2/catch_amalgamated.hpp>

#include "fpart/enumerate.hpp"
#include "fpart/partition_engine.hpp"

using namespace fpart;

namespace {

Graph two_k2() { return disjoint_union(complete_graph(2), complete_graph(2)); }

bool verifies(const Graph& g, const TwoGraphsResult& res) {
    return verify_partition(g, res.patterns, res.partition).valid;
}

bool verifies(const Graph& g, const DriverResult& res) {
    return verify_partition(g, res.patterns, res.partition).valid;
}

}  // namespace

TEST_CASE("phi values") {
    CHECK(phi(2, 2) == 1);
    CHECK(phi(0, 2) == 18);
    CHECK(phi(1, 3) == 32);
    CHECK(phi(3, 3) == 1);
    CHECK_THROWS_AS(phi(3, 2), InputError);
    CHECK_THROWS_AS(phi(-1, 2), InputError);
}

TEST_CASE("normalize_pair") {
    SECTION("all sizes equal keeps the first choice") {
        auto [fp, rec] = normalize_pair(two_k2(), cycle_graph(4));
        CHECK(fp.m == 2);
        CHECK_FALSE(rec.complemented);
        CHECK_FALSE(rec.side_swapped);
        CHECK(is_isomorphic(fp.H1, complete_graph(2)));
        CHECK(is_isomorphic(fp.J1, edgeless_graph(2)));
        CHECK(rec.certificate_map == std::array<int, 4>{0, 1, 2, 3});
    }
    SECTION("largest component wins") {
        Graph h = disjoint_union(complete_graph(2), complete_graph(3));
        auto [fp, rec] = normalize_pair(h, cycle_graph(4));
        CHECK(fp.m == 3);
        CHECK_FALSE(rec.complemented);
        CHECK(is_isomorphic(fp.H1, complete_graph(3)));
    }
    SECTION("maximum on the J side complements") {
        Graph j = complement(disjoint_union(complete_graph(3), complete_graph(3)));
        auto [fp, rec] = normalize_pair(two_k2(), j);
        CHECK(rec.complemented);
        CHECK(fp.m == 3);
        CHECK(is_isomorphic(fp.H1, complete_graph(3)));
    }
    SECTION("hypothesis violations") {
        CHECK_THROWS_AS(normalize_pair(complete_graph(3), cycle_graph(4)), HypothesisError);
        CHECK_THROWS_AS(normalize_pair(two_k2(), edgeless_graph(3)), HypothesisError);
    }
    SECTION("Hstar is H1 plus one isolated vertex") {
        auto [fp, rec] = normalize_pair(two_k2(), cycle_graph(4));
        CHECK(fp.Hstar.n() == 3);
        CHECK(fp.hstar == 2);
        CHECK(fp.Hstar.degree(fp.hstar) == 0);
    }
}

TEST_CASE("corresponding_set") {
    auto [fp, rec] = normalize_pair(two_k2(), cycle_graph(4));

    SECTION("null piece corresponds to everything") {
        Graph g = cycle_graph(5);
        PieceState empty{Bitset(fp.Hstar.n()), {}};
        for (int added : {0, 1, 2})
            CHECK(corresponding_set(g, fp, empty, added) == Bitset::full(5));
    }
    SECTION("non-edge extension in K_3 is empty") {
        Graph g = complete_graph(3);
        PieceState piece{Bitset::of(fp.Hstar.n(), {0}), {0}};
        // hstar is non-adjacent to vertex 0 in Hstar
        CHECK(corresponding_set(g, fp, piece, fp.hstar).none());
    }
    SECTION("edge extension in P_3 gives the neighbors") {
        Graph g = path_graph(3);
        PieceState piece{Bitset::of(fp.Hstar.n(), {0}), {1}};
        // vertex 1 of Hstar is adjacent to vertex 0 (H1 = K_2)
        Bitset y = corresponding_set(g, fp, piece, 1);
        CHECK(y == g.neighbors(1));
    }
    SECTION("bad extension vertex throws") {
        Graph g = path_graph(3);
        PieceState piece{Bitset::of(fp.Hstar.n(), {0}), {1}};
        CHECK_THROWS_AS(corresponding_set(g, fp, piece, 0), InputError);
    }
}

TEST_CASE("partition_from_piece base case") {
    auto [fp, rec] = normalize_pair(two_k2(), cycle_graph(4));
    // A split-friendly host: triangle with a pendant vertex (paw), {2K_2,C_4}-free.
    Graph g = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
    auto emb = contains_induced(g, fp.H1);
    REQUIRE(emb.has_value());
    PieceState piece{Bitset::of(fp.Hstar.n(), {0, 1}), emb->map};
    PieceResult res = partition_from_piece(g, fp, piece);
    CHECK(res.extension == fp.hstar);
    CHECK(res.partition.classes.size() <= 1);
    Bitset y = corresponding_set(g, fp, piece, fp.hstar);
    std::vector<Graph> engine_patterns = {fp.H1, fp.H2, fp.J1, fp.J2};
    CHECK(verify_partition_of(g, engine_patterns, res.partition, y).valid);
}

TEST_CASE("partition_from_piece on C_5 from the null piece") {
    auto [fp, rec] = normalize_pair(two_k2(), cycle_graph(4));
    Graph g = cycle_graph(5);
    PieceResult res = partition_from_piece(g, fp, {Bitset(fp.Hstar.n()), {}});
    CHECK(res.partition.classes.size() <= 18);
    std::vector<Graph> engine_patterns = {fp.H1, fp.H2, fp.J1, fp.J2};
    CHECK(verify_partition_of(g, engine_patterns, res.partition, Bitset::full(5)).valid);
}

TEST_CASE("two_graphs_partition examples") {
    SECTION("C_5 with (2K_2, C_4)") {
        auto res = two_graphs_partition(cycle_graph(5), two_k2(), cycle_graph(4));
        CHECK(res.class_budget == 18);
        CHECK(res.partition.classes.size() <= 18);
        CHECK(verifies(cycle_graph(5), res));
    }
    SECTION("K_1") {
        auto res = two_graphs_partition(complete_graph(1), two_k2(), cycle_graph(4));
        CHECK(verifies(complete_graph(1), res));
        CHECK(res.partition.classes.size() == 1);
    }
    SECTION("split graph: triangle with pendant stable set") {
        Graph g = graph_from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 4}, {2, 5}});
        REQUIRE_FALSE(contains_induced(g, two_k2()).has_value());
        REQUIRE_FALSE(contains_induced(g, cycle_graph(4)).has_value());
        auto res = two_graphs_partition(g, two_k2(), cycle_graph(4));
        CHECK(verifies(g, res));
    }
    SECTION("G containing C_4 raises a hypothesis violation with witness") {
        Graph g = cycle_graph(4);
        try {
            two_graphs_partition(g, two_k2(), cycle_graph(4));
            FAIL("expected HypothesisError");
        } catch (const HypothesisError& e) {
            REQUIRE(e.has_witness());
            CHECK(e.witness_pattern_name == "J");
            Graph pat(e.witness_pattern_n);
            for (auto [u, v] : e.witness_pattern_edges) pat.add_edge(u, v);
            CHECK(is_induced_embedding(g, Embedding{pat, e.witness_map}));
        }
    }
    SECTION("null graph gives the empty partition") {
        auto res = two_graphs_partition(Graph(0), two_k2(), cycle_graph(4));
        CHECK(res.partition.classes.empty());
    }
}

TEST_CASE("engine handles complement normalization") {
    Graph j = complement(disjoint_union(complete_graph(3), complete_graph(3)));  // K_3,3
    Graph h = two_k2();
    Rng rng = Rng::stream(41, 0);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 40; ++trial) {
        int n = 1 + static_cast<int>(rng.below(8));
        Graph g = random_graph(rng, n);
        if (contains_induced(g, h) || contains_induced(g, j)) continue;
        ++checked;
        auto res = two_graphs_partition(g, h, j);
        CHECK(res.record.complemented);
        CHECK(verifies(g, res));
        CHECK(res.partition.classes.size() <= res.class_budget);
    }
    CHECK(checked == 40);
}

TEST_CASE("soundness over enumerated free graphs, pair (2K_2, C_4)") {
    auto levels = free_graphs_up_to(7, {two_k2(), cycle_graph(4)});
    for (int n = 0; n <= 7; ++n) {
        for (const auto& g : levels[n]) {
            auto res = two_graphs_partition(g, two_k2(), cycle_graph(4));
            CHECK(res.partition.classes.size() <= 18);
            CHECK(verifies(g, res));
        }
    }
}

TEST_CASE("soundness for pair (K_2 u K_3, C_4) on random free graphs") {
    Graph h = disjoint_union(complete_graph(2), complete_graph(3));
    Graph j = cycle_graph(4);
    Rng rng = Rng::stream(43, 0);
    int checked = 0;
    for (int trial = 0; trial < 800 && checked < 60; ++trial) {
        int n = 1 + static_cast<int>(rng.below(9));
        Graph g = random_graph(rng, n, 0.4);
        if (contains_induced(g, h) || contains_induced(g, j)) continue;
        ++checked;
        auto res = two_graphs_partition(g, h, j);
        CHECK(res.class_budget == 2 * 4 * 4 * 4);
        CHECK(verifies(g, res));
    }
    CHECK(checked == 60);
}

TEST_CASE("disconnected_partition certificates stay in c(H) u ac(J)") {
    Graph h = two_k2(), j = cycle_graph(4);
    auto levels = free_graphs_up_to(6, {h, j});
    for (int n = 0; n <= 6; ++n) {
        for (const auto& g : levels[n]) {
            auto res = disconnected_partition(g, h, j);
            REQUIRE(res.patterns.size() == 2);
            CHECK(is_isomorphic(res.patterns[0], complete_graph(2)));
            CHECK(is_isomorphic(res.patterns[1], edgeless_graph(2)));
            CHECK(verifies(g, res));
        }
    }
}

TEST_CASE("disconnected_partition trivial cases") {
    SECTION("H connected gives one class") {
        Graph g = edgeless_graph(4);  // K_3-free
        auto res = disconnected_partition(g, complete_graph(3), cycle_graph(4));
        REQUIRE(res.partition.classes.size() == 1);
        CHECK(res.partition.classes[0].certificate.kind == Certificate::Kind::Avoids);
        CHECK(verifies(g, res));
        CHECK(res.bound_product == 1);
    }
    SECTION("J anticonnected gives one class") {
        Graph g = complete_graph(4);  // S_2-free, and 2K_2-free
        auto res = disconnected_partition(g, two_k2(), edgeless_graph(2));
        REQUIRE(res.partition.classes.size() == 1);
        CHECK(verifies(g, res));
    }
    SECTION("K_1") {
        auto res = disconnected_partition(complete_graph(1), two_k2(), cycle_graph(4));
        CHECK(res.partition.classes.size() == 1);
        CHECK(verifies(complete_graph(1), res));
    }
    SECTION("hypothesis violation propagates") {
        CHECK_THROWS_AS(disconnected_partition(cycle_graph(4), two_k2(), cycle_graph(4)),
                        HypothesisError);
    }
}

TEST_CASE("random pairs: both engines verify on free hosts") {
    Rng rng = Rng::stream(151, 0);
    int pair_trials = 0, host_checks = 0;
    while (pair_trials < 25) {
        Graph h1 = random_graph(rng, 1 + static_cast<int>(rng.below(3)));
        Graph h2 = random_graph(rng, 1 + static_cast<int>(rng.below(3)));
        Graph j1 = random_graph(rng, 1 + static_cast<int>(rng.below(2)));
        Graph j2 = random_graph(rng, 1 + static_cast<int>(rng.below(2)));
        Graph h = disjoint_union(h1, h2);
        Graph j = join_graphs(j1, j2);
        ++pair_trials;
        for (int attempt = 0; attempt < 60; ++attempt) {
            Graph g = random_graph(rng, 1 + static_cast<int>(rng.below(7)));
            if (contains_induced(g, h) || contains_induced(g, j)) continue;
            ++host_checks;
            auto pair_res = two_graphs_partition(g, h, j);
            CHECK(verify_partition(g, pair_res.patterns, pair_res.partition).valid);
            CHECK(pair_res.partition.classes.size() <= pair_res.class_budget);
            auto driver_res = disconnected_partition(g, h, j);
            CHECK(verify_partition(g, driver_res.patterns, driver_res.partition).valid);
        }
    }
    CHECK(host_checks > 200);
}

TEST_CASE("disconnected_partition with a three-component H") {
    Graph h =
        disjoint_union(disjoint_union(complete_graph(2), complete_graph(2)), complete_graph(3));
    Graph j = cycle_graph(4);
    Rng rng = Rng::stream(47, 0);
    int checked = 0;
    for (int trial = 0; trial < 800 && checked < 50; ++trial) {
        int n = 1 + static_cast<int>(rng.below(9));
        Graph g = random_graph(rng, n, 0.45);
        if (contains_induced(g, h) || contains_induced(g, j)) continue;
        ++checked;
        auto res = disconnected_partition(g, h, j);
        REQUIRE(res.h_pattern_count == 2);  // K_2 and K_3 after dedup
        CHECK(verifies(g, res));
    }
    CHECK(checked == 50);
}
