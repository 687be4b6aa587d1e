#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fpart/graph.hpp"
#include "fpart/oracles.hpp"
#include "fpart/rng.hpp"

namespace fpart {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

// Block decompositions of L and M, reordered so the largest block overall is
// the first L-block (swapping the roles of L and M when needed).
struct BlockLibrary {
    Graph L, M;
    bool swapped = false;
    std::vector<Graph> l_blocks;  // descending size
    std::vector<Graph> m_blocks;
    int max_block = 0;  // |V(L_1)|
    int l_isolated = 0, m_isolated = 0;

    int piece_count() const { return static_cast<int>(l_blocks.size() + m_blocks.size()); }
    bool piece_is_l(int id) const { return id < static_cast<int>(l_blocks.size()); }
    const Graph& piece(int id) const {
        return piece_is_l(id) ? l_blocks[id] : m_blocks[id - l_blocks.size()];
    }
};

inline BlockLibrary block_library(const Graph& l, const Graph& m) {
    if (l.edge_count() == 0 || m.edge_count() == 0)
        throw HypothesisError("block_library: L and M must each have at least one edge");

    auto decompose = [](const Graph& g, int& isolated) {
        std::vector<Graph> out;
        Bitset in_blocks(g.n());
        for (const auto& b : blocks(g)) {
            out.push_back(induced(g, b).graph);
            in_blocks |= b;
        }
        isolated = g.n() - in_blocks.count();
        std::stable_sort(out.begin(), out.end(),
                         [](const Graph& a, const Graph& b) { return a.n() > b.n(); });
        return out;
    };

    BlockLibrary lib;
    lib.L = l;
    lib.M = m;
    lib.l_blocks = decompose(l, lib.l_isolated);
    lib.m_blocks = decompose(m, lib.m_isolated);
    if (lib.m_blocks.front().n() > lib.l_blocks.front().n()) {
        lib.swapped = true;
        std::swap(lib.L, lib.M);
        std::swap(lib.l_blocks, lib.m_blocks);
        std::swap(lib.l_isolated, lib.m_isolated);
    }
    lib.max_block = lib.l_blocks.front().n();
    for (const auto& b : lib.l_blocks)
        detail::engine_check(b.n() <= lib.max_block, "block larger than L_1");
    for (const auto& b : lib.m_blocks)
        detail::engine_check(b.n() <= lib.max_block, "block larger than L_1");
    return lib;
}

struct ConstructionParams {
    int n = 0;
    int r = 2;
    int k = 1;
    Rational epsilon{0, 1};  // num == 0 means the default 1/(r+2)
    std::uint64_t seed = 0;
    double max_expected_hyperedges = 10'000'000.0;

    Rational effective_epsilon() const {
        if (epsilon.num == 0) return {1, static_cast<std::int64_t>(r) + 2};
        return epsilon;
    }
};

inline void validate_params(const ConstructionParams& p) {
    if (p.n < 0) throw InputError("construction: n must be non-negative");
    if (p.r < 2) throw InputError("construction: r must be at least 2");
    if (p.k < 1) throw InputError("construction: k must be at least 1");
    Rational eps = p.effective_epsilon();
    if (eps.den <= 0 || eps.num <= 0 || eps.num >= eps.den)
        throw InputError("construction: epsilon must satisfy 0 < epsilon < 1");
}

struct LabeledHypergraph {
    struct Hyperedge {
        std::vector<int> vertices;  // sorted ascending
        std::vector<int> labels;    // piece ids, sorted ascending
        bool operator==(const Hyperedge&) const = default;
    };
    int n = 0;
    std::vector<Hyperedge> hyperedges;  // sorted by vertex tuple
    bool operator==(const LabeledHypergraph&) const = default;
};

namespace detail {

using uint128 = unsigned __int128;

inline uint128 binomial128(int n, int k) {
    if (k < 0 || k > n) return 0;
    uint128 c = 1;
    for (int i = 0; i < k; ++i) c = c * static_cast<uint128>(n - i) / static_cast<uint128>(i + 1);
    return c;
}

// Failures before the next success for tiny p over a huge index space.
inline uint128 geometric_skip128(Rng& rng, double p) {
    if (p >= 1.0) return 0;
    long double u = static_cast<long double>(rng.uniform01());
    long double s = std::floor(std::log1p(-u) / std::log1p(-static_cast<long double>(p)));
    if (s < 0) s = 0;
    const long double cap = 1e30L;
    if (s > cap) s = cap;
    return static_cast<uint128>(s);
}

// rank-th b-subset of {0..n-1} in lexicographic order.
inline std::vector<int> unrank_subset(uint128 rank, int n, int b) {
    std::vector<int> out;
    out.reserve(b);
    int v = 0;
    for (int i = 0; i < b; ++i) {
        while (true) {
            uint128 cnt = binomial128(n - v - 1, b - i - 1);
            if (rank < cnt) {
                out.push_back(v);
                ++v;
                break;
            }
            rank -= cnt;
            ++v;
        }
    }
    return out;
}

}  // namespace detail

// Each piece contributes a b-uniform random hypergraph where every b-subset
// appears independently with probability n^(-(b-1)+epsilon). Draws use
// geometric skip-sampling over the lexicographic subset ranks, one seeded
// stream per piece, so runs are reproducible without touching every subset.
inline LabeledHypergraph sample_hypergraph(const BlockLibrary& lib,
                                           const ConstructionParams& params) {
    validate_params(params);
    const int n = params.n;
    const double eps = params.effective_epsilon().value();

    double expected_total = 0;
    for (int p = 0; p < lib.piece_count(); ++p) {
        const int b = lib.piece(p).n();
        if (b > 8) throw InputError("sample_hypergraph: block size above 8 is not supported");
        if (b > n || n < 2) continue;
        const double prob = std::pow(static_cast<double>(n), -(b - 1) + eps);
        expected_total += static_cast<double>(detail::binomial128(n, b)) * prob;
    }
    if (expected_total > params.max_expected_hyperedges)
        throw BudgetError("sample_hypergraph: expected hyperedge count " +
                          std::to_string(expected_total) + " exceeds budget " +
                          std::to_string(params.max_expected_hyperedges));

    std::map<std::vector<int>, std::vector<int>> edges;
    for (int p = 0; p < lib.piece_count(); ++p) {
        const int b = lib.piece(p).n();
        if (b > n || n < 2) continue;
        const double prob = std::pow(static_cast<double>(n), -(b - 1) + eps);
        const detail::uint128 total = detail::binomial128(n, b);
        Rng rng = Rng::stream(params.seed, static_cast<std::uint64_t>(p));
        detail::uint128 idx = detail::geometric_skip128(rng, prob);
        while (idx < total) {
            edges[detail::unrank_subset(idx, n, b)].push_back(p);
            idx += 1 + detail::geometric_skip128(rng, prob);
        }
    }

    LabeledHypergraph hg;
    hg.n = n;
    for (auto& [verts, labels] : edges) hg.hyperedges.push_back({verts, labels});
    return hg;
}

struct Violations {
    std::vector<int> multilabel;           // hyperedge indices
    std::vector<std::vector<int>> cycles;  // vertex sequences, lengths 2..r
    bool clean() const { return multilabel.empty() && cycles.empty(); }
};

// Multilabeled hyperedges, 2-cycles (a pair inside two distinct hyperedges)
// and representative t-cycles for 3 <= t <= r: vertex sequences where some
// hyperedge meets the cycle set in exactly each consecutive pair.
inline Violations find_violations(const LabeledHypergraph& hg, int r,
                                  std::size_t max_cycles = 10000) {
    if (r < 2) throw InputError("find_violations: r must be at least 2");
    Violations out;
    for (std::size_t i = 0; i < hg.hyperedges.size(); ++i)
        if (hg.hyperedges[i].labels.size() >= 2) out.multilabel.push_back(static_cast<int>(i));

    std::map<std::pair<int, int>, std::vector<int>> pair_edges;
    for (std::size_t i = 0; i < hg.hyperedges.size(); ++i) {
        const auto& vs = hg.hyperedges[i].vertices;
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                pair_edges[{vs[a], vs[b]}].push_back(static_cast<int>(i));
    }

    for (const auto& [pr, ids] : pair_edges) {
        if (ids.size() >= 2 && out.cycles.size() < max_cycles)
            out.cycles.push_back({pr.first, pr.second});
    }

    if (r < 3) return out;
    std::vector<Bitset> adj(hg.n, Bitset(hg.n));
    for (const auto& [pr, ids] : pair_edges) {
        adj[pr.first].set(pr.second);
        adj[pr.second].set(pr.first);
    }

    Bitset cycmask(hg.n);
    auto pair_exact = [&](int u, int v) {
        auto it = pair_edges.find({std::min(u, v), std::max(u, v)});
        if (it == pair_edges.end()) return false;
        for (int idx : it->second) {
            int inside = 0;
            for (int w : hg.hyperedges[idx].vertices) inside += cycmask.test(w);
            if (inside == 2) return true;
        }
        return false;
    };

    std::vector<int> path;
    auto dfs = [&](auto&& self, int start, int cur) -> void {
        if (out.cycles.size() >= max_cycles) return;
        if (static_cast<int>(path.size()) >= 3 && adj[cur].test(start) &&
            path[1] < path.back()) {
            bool exact = true;
            for (std::size_t i = 0; i < path.size() && exact; ++i)
                exact = pair_exact(path[i], path[(i + 1) % path.size()]);
            if (exact) out.cycles.push_back(path);
        }
        if (static_cast<int>(path.size()) == r) return;
        for (int w : adj[cur]) {
            if (w <= start || cycmask.test(w)) continue;
            path.push_back(w);
            cycmask.set(w);
            self(self, start, w);
            cycmask.reset(w);
            path.pop_back();
        }
    };
    for (int s = 0; s < hg.n && out.cycles.size() < max_cycles; ++s) {
        path.assign(1, s);
        cycmask.set(s);
        dfs(dfs, s, s);
        cycmask.reset(s);
    }
    return out;
}

// One vertex per violating object: the lowest id involved.
inline Bitset removal_step(const LabeledHypergraph& hg, const Violations& v) {
    Bitset r(hg.n);
    for (int idx : v.multilabel) r.set(hg.hyperedges[idx].vertices.front());
    for (const auto& cyc : v.cycles) r.set(*std::min_element(cyc.begin(), cyc.end()));
    return r;
}

// Hyperedges disjoint from R survive.
inline LabeledHypergraph remove_meeting(const LabeledHypergraph& hg, const Bitset& r) {
    LabeledHypergraph out;
    out.n = hg.n;
    for (const auto& he : hg.hyperedges) {
        bool hit = false;
        for (int v : he.vertices)
            if (r.test(v)) {
                hit = true;
                break;
            }
        if (!hit) out.hyperedges.push_back(he);
    }
    return out;
}

struct RemovalResult {
    Bitset removed;
    int rounds = 0;
};

// Iterates removal to a fixed point: deleting a vertex can only delete
// hyperedges, but the single pass from the probabilistic argument is not a
// deterministic guarantee, so the audit is re-run until clean.
inline RemovalResult removal_set(const LabeledHypergraph& hg, int r) {
    RemovalResult res;
    res.removed = Bitset(hg.n);
    LabeledHypergraph cur = hg;
    while (true) {
        Violations v = find_violations(cur, r);
        if (v.clean()) break;
        ++res.rounds;
        detail::engine_check(res.rounds <= hg.n + 1, "removal failed to reach a fixed point");
        res.removed |= removal_step(cur, v);
        cur = remove_meeting(hg, res.removed);
    }
    return res;
}

struct RealizedGraph {
    Graph graph;
    // (u, v, hyperedge index) sorted by edge; every edge lies in exactly one
    // surviving hyperedge.
    std::vector<std::array<int, 3>> provenance;
};

// Replaces each surviving hyperedge by a copy of its block, placed under a
// seeded shuffle of the hyperedge's vertices.
inline RealizedGraph realize_hypergraph(const LabeledHypergraph& hg, const BlockLibrary& lib,
                                        std::uint64_t seed) {
    std::set<std::pair<int, int>> seen_pairs;
    for (const auto& he : hg.hyperedges) {
        if (he.labels.size() != 1)
            throw InputError("realize_hypergraph: hyperedge without a unique label");
        for (std::size_t a = 0; a < he.vertices.size(); ++a)
            for (std::size_t b = a + 1; b < he.vertices.size(); ++b)
                if (!seen_pairs.insert({he.vertices[a], he.vertices[b]}).second)
                    throw InputError("realize_hypergraph: a pair lies in two hyperedges");
    }

    RealizedGraph out;
    out.graph = Graph(hg.n);
    std::map<std::pair<int, int>, int> owner;
    for (std::size_t i = 0; i < hg.hyperedges.size(); ++i) {
        const auto& he = hg.hyperedges[i];
        const Graph& block = lib.piece(he.labels.front());
        detail::engine_check(block.n() == static_cast<int>(he.vertices.size()),
                             "hyperedge size does not match its block");
        std::vector<int> perm(block.n());
        for (int j = 0; j < block.n(); ++j) perm[j] = j;
        Rng rng = Rng::stream(seed, 0x9e3779b9ULL + i);
        for (int j = block.n() - 1; j > 0; --j)
            std::swap(perm[j], perm[rng.below(static_cast<std::uint64_t>(j) + 1)]);
        for (auto [a, b] : block.edges()) {
            int u = he.vertices[perm[a]], v = he.vertices[perm[b]];
            out.graph.add_edge(u, v);
            owner[{std::min(u, v), std::max(u, v)}] = static_cast<int>(i);
        }
    }
    for (const auto& [e, idx] : owner) out.provenance.push_back({e.first, e.second, idx});
    return out;
}

struct TinyExactCheck {
    bool ran = false;
    bool refused = false;
    bool exists = false;  // oracle outcome when ran && !refused
};

struct ConstructionReport {
    ConstructionParams params;
    BlockLibrary library;
    // pipeline artifacts
    LabeledHypergraph sampled;     // before removal
    LabeledHypergraph surviving;   // after removal
    Bitset removed;
    int removal_rounds = 0;
    std::size_t initial_multilabel = 0;
    std::size_t initial_cycles = 0;
    Graph graph;
    std::vector<std::array<int, 3>> provenance;
    std::optional<int> girth_value;
    bool r_below_paper_assumption = false;  // r < 3*max(|V(L)|, |V(M)|)
    double removed_ratio = 0.0;             // |R| / (n / log n)
    TinyExactCheck tiny_exact;
};

// Full pipeline: sample, audit, remove to a fixed point, realize. For tiny
// instances (n <= 12, k <= 3) the exact partition oracle is consulted and its
// answer recorded as-is.
inline ConstructionReport construct(const Graph& l, const Graph& m,
                                    const ConstructionParams& params) {
    validate_params(params);
    ConstructionReport rep;
    rep.params = params;
    rep.library = block_library(l, m);
    rep.r_below_paper_assumption = params.r < 3 * std::max(l.n(), m.n());

    rep.sampled = sample_hypergraph(rep.library, params);
    Violations initial = find_violations(rep.sampled, params.r);
    rep.initial_multilabel = initial.multilabel.size();
    rep.initial_cycles = initial.cycles.size();

    RemovalResult rem = removal_set(rep.sampled, params.r);
    rep.removed = rem.removed;
    rep.removal_rounds = rem.rounds;
    rep.surviving = remove_meeting(rep.sampled, rep.removed);
    detail::engine_check(find_violations(rep.surviving, params.r).clean(),
                         "post-removal hypergraph still has violations");

    RealizedGraph rg = realize_hypergraph(rep.surviving, rep.library, params.seed);
    rep.graph = std::move(rg.graph);
    rep.provenance = std::move(rg.provenance);
    rep.girth_value = girth(rep.graph);

    if (params.n >= 2)
        rep.removed_ratio = rep.removed.count() /
                            (params.n / std::log(static_cast<double>(params.n)));

    if (params.n <= 12 && params.k <= 3) {
        rep.tiny_exact.ran = true;
        try {
            rep.tiny_exact.exists = exists_partition(rep.graph, {l, m}, params.k).has_value();
        } catch (const BudgetError&) {
            rep.tiny_exact.refused = true;
        }
    }
    return rep;
}

// ---- audits ------------------------------------------------------------------

struct LocalSplitReport {
    int subset_size = 0;
    bool exhaustive = false;
    std::uint64_t samples_run = 0;
    std::uint64_t counterexamples = 0;
    std::vector<int> first_counterexample;  // empty when none
};

namespace detail {

// Distinct seeded subsets of the given size; exhaustive lexicographic
// enumeration when there are at most `samples` subsets in total.
template <typename Visit>
inline std::pair<bool, std::uint64_t> for_subsets(int n, int size, std::uint64_t samples,
                                                  std::uint64_t seed, std::uint64_t stream,
                                                  Visit&& visit) {
    const uint128 total = binomial128(n, size);
    if (total <= samples) {
        std::uint64_t count = 0;
        for (uint128 rank = 0; rank < total; ++rank) {
            visit(unrank_subset(rank, n, size));
            ++count;
        }
        return {true, count};
    }
    Rng rng = Rng::stream(seed, stream);
    std::set<std::vector<int>> seen;
    std::uint64_t count = 0, attempts = 0;
    std::vector<int> pool(n);
    while (count < samples && attempts < samples * 20 + 64) {
        ++attempts;
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < size; ++i) {
            std::uint64_t j = i + rng.below(static_cast<std::uint64_t>(n - i));
            std::swap(pool[i], pool[j]);
        }
        std::vector<int> subset(pool.begin(), pool.begin() + size);
        std::sort(subset.begin(), subset.end());
        if (!seen.insert(subset).second) continue;
        visit(subset);
        ++count;
    }
    return {false, count};
}

}  // namespace detail

// Samples subsets of size min(r, n) and runs the split oracle on each; any
// subset that fails to be {L,M}-split is a counterexample. Subsets of smaller
// size are covered automatically because splitness is hereditary.
inline LocalSplitReport audit_local_split(const Graph& g, const Graph& l, const Graph& m, int r,
                                          std::uint64_t samples, std::uint64_t seed) {
    LocalSplitReport rep;
    rep.subset_size = std::min(r, g.n());
    auto [exhaustive, run] = detail::for_subsets(
        g.n(), rep.subset_size, samples, seed, 0xa11d17ULL, [&](const std::vector<int>& subset) {
            auto sub = induced(g, Bitset::of(g.n(), subset));
            if (!is_split(sub.graph, l, m)) {
                ++rep.counterexamples;
                if (rep.first_counterexample.empty()) rep.first_counterexample = subset;
            }
        });
    rep.exhaustive = exhaustive;
    rep.samples_run = run;
    return rep;
}

struct DensityReport {
    int subset_size = 0;
    bool exhaustive = false;
    std::uint64_t samples_run = 0;
    std::uint64_t l_missing = 0;  // subsets whose induced subgraph is L-free
    std::uint64_t m_missing = 0;
    std::vector<int> first_failure;  // first subset missing L or M
};

// Samples subsets of size ceil(n/2k) and checks that each contains both L
// and M; failure rates are reported as observed.
inline DensityReport audit_density(const Graph& g, const Graph& l, const Graph& m, int k,
                                   std::uint64_t samples, std::uint64_t seed) {
    if (k < 1) throw InputError("audit_density: k must be at least 1");
    DensityReport rep;
    if (g.n() == 0) return rep;
    rep.subset_size = std::min(g.n(), (g.n() + 2 * k - 1) / (2 * k));
    auto [exhaustive, run] = detail::for_subsets(
        g.n(), rep.subset_size, samples, seed, 0xde5171ULL, [&](const std::vector<int>& subset) {
            auto sub = induced(g, Bitset::of(g.n(), subset));
            const bool no_l = !contains_induced(sub.graph, l).has_value();
            const bool no_m = !contains_induced(sub.graph, m).has_value();
            if (no_l) ++rep.l_missing;
            if (no_m) ++rep.m_missing;
            if ((no_l || no_m) && rep.first_failure.empty()) rep.first_failure = subset;
        });
    rep.exhaustive = exhaustive;
    rep.samples_run = run;
    return rep;
}

}  // namespace fpart
