#include <catch2/catch_amalgamated.hpp>

#include "fpart/oracles.hpp"
#include "fpart/rng.hpp"

using namespace fpart;

namespace {

Graph random_graph(Rng& rng, int n, double p = 0.5) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

FPartition all_singletons(int n) {
    FPartition p;
    for (int v = 0; v < n; ++v) {
        Bitset b(n);
        b.set(v);
        p.classes.push_back({b, Certificate::singleton()});
    }
    return p;
}

}  // namespace

TEST_CASE("verify_partition examples") {
    std::vector<Graph> k2s2 = {complete_graph(2), edgeless_graph(2)};

    SECTION("all singletons are valid") {
        CHECK(verify_partition(cycle_graph(5), k2s2, all_singletons(5)).valid);
    }
    SECTION("K_3 as one class avoids S_2") {
        FPartition p;
        p.classes.push_back({Bitset::full(3), Certificate::avoids(0)});
        CHECK(verify_partition(complete_graph(3), {edgeless_graph(2)}, p).valid);
    }
    SECTION("P_3 as one class does not avoid K_2") {
        FPartition p;
        p.classes.push_back({Bitset::full(3), Certificate::avoids(0)});
        auto rep = verify_partition(path_graph(3), {complete_graph(2)}, p);
        REQUIRE_FALSE(rep.valid);
        REQUIRE(rep.first_violation.has_value());
        CHECK(rep.first_violation->kind == PartitionViolation::Kind::PatternFound);
        CHECK(rep.first_violation->class_index == 0);
        REQUIRE(rep.first_violation->witness.has_value());
        CHECK(is_induced_embedding(path_graph(3), *rep.first_violation->witness));
    }
    SECTION("unknown pattern index throws") {
        FPartition p;
        p.classes.push_back({Bitset::full(2), Certificate::avoids(3)});
        CHECK_THROWS_AS(verify_partition(complete_graph(2), k2s2, p), InputError);
    }
    SECTION("overlap and gap are caught") {
        FPartition p = all_singletons(3);
        p.classes[1].vertices.set(0);
        auto rep = verify_partition(edgeless_graph(3), k2s2, p);
        REQUIRE_FALSE(rep.valid);
        CHECK(rep.first_violation->kind == PartitionViolation::Kind::Overlap);

        FPartition q = all_singletons(3);
        q.classes.pop_back();
        auto rep2 = verify_partition(edgeless_graph(3), k2s2, q);
        REQUIRE_FALSE(rep2.valid);
        CHECK(rep2.first_violation->kind == PartitionViolation::Kind::Gap);
        CHECK(rep2.first_violation->vertex == 2);
    }
}

TEST_CASE("is_split examples") {
    Graph k2 = complete_graph(2), s2 = edgeless_graph(2);

    CHECK_FALSE(is_split(cycle_graph(5), k2, s2).has_value());

    auto w = is_split(complete_graph(4), k2, s2);
    REQUIRE(w.has_value());
    CHECK((w->x | w->y) == Bitset::full(4));
    CHECK_FALSE(contains_induced_in(complete_graph(4), w->x, k2).has_value());
    CHECK_FALSE(contains_induced_in(complete_graph(4), w->y, s2).has_value());

    auto e = is_split(Graph(0), k2, s2);
    REQUIRE(e.has_value());
    CHECK(e->x.none());

    CHECK_FALSE(is_split(cycle_graph(4), k2, s2).has_value());

    CHECK_THROWS_AS(is_split(edgeless_graph(31), k2, s2), BudgetError);
}

TEST_CASE("exists_partition examples") {
    std::vector<Graph> k2s2 = {complete_graph(2), edgeless_graph(2)};

    CHECK_FALSE(exists_partition(cycle_graph(5), k2s2, 2).has_value());

    auto p = exists_partition(cycle_graph(5), k2s2, 3);
    REQUIRE(p.has_value());
    CHECK(verify_partition(cycle_graph(5), k2s2, *p).valid);

    auto q = exists_partition(complete_graph(1), {complete_graph(3)}, 1);
    REQUIRE(q.has_value());
    REQUIRE(q->classes.size() == 1);
    CHECK(q->classes[0].certificate.kind == Certificate::Kind::Singleton);

    CHECK_THROWS_AS(exists_partition(edgeless_graph(30), k2s2, 3, ExistsOptions{1000, true, false}),
                    BudgetError);
    CHECK_THROWS_AS(exists_partition(complete_graph(2), k2s2, 0), InputError);
}

TEST_CASE("exists_partition output always verifies") {
    std::vector<Graph> pats = {complete_graph(2), edgeless_graph(2)};
    Rng rng = Rng::stream(23, 0);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(rng.below(8));
        Graph g = random_graph(rng, n);
        for (int k = 1; k <= 3; ++k) {
            auto p = exists_partition(g, pats, k);
            if (p) {
                CHECK(verify_partition(g, pats, *p).valid);
                CHECK(static_cast<int>(p->classes.size()) <= k);
            }
        }
    }
}

TEST_CASE("exists_partition monotone in k") {
    std::vector<Graph> pats = {complete_graph(2), edgeless_graph(2)};
    Rng rng = Rng::stream(29, 0);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng.below(7));
        Graph g = random_graph(rng, n);
        for (int k = 1; k <= 2; ++k) {
            if (exists_partition(g, pats, k).has_value())
                CHECK(exists_partition(g, pats, k + 1).has_value());
        }
    }
}

TEST_CASE("is_split agrees with fixed-assignment exists_partition") {
    Graph k2 = complete_graph(2), s2 = edgeless_graph(2);
    std::vector<Graph> pats = {k2, s2};
    ExistsOptions fixed;
    fixed.allow_singletons = false;
    fixed.fixed_assignment = true;

    Rng rng = Rng::stream(31, 0);
    for (int trial = 0; trial < 80; ++trial) {
        int n = static_cast<int>(rng.below(9));
        Graph g = random_graph(rng, n);
        bool split = is_split(g, k2, s2).has_value();
        bool part = exists_partition(g, pats, 2, fixed).has_value();
        CHECK(split == part);
    }
}

TEST_CASE("restrict_partition keeps certificates and drops empties") {
    std::vector<Graph> pats = {complete_graph(2)};
    Graph g = disjoint_union(complete_graph(2), edgeless_graph(3));
    FPartition p;
    p.classes.push_back({Bitset::of(5, {0}), Certificate::singleton()});
    p.classes.push_back({Bitset::of(5, {1}), Certificate::singleton()});
    p.classes.push_back({Bitset::of(5, {2, 3, 4}), Certificate::avoids(0)});

    Bitset keep = Bitset::of(5, {1, 2, 3});
    FPartition r = restrict_partition(p, keep);
    REQUIRE(r.classes.size() == 2);
    CHECK(verify_partition_of(g, pats, r, keep).valid);
}
