#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "fpart/graph.hpp"
#include "fpart/rng.hpp"

namespace fpart {

namespace detail {

// Cheap isomorphism invariant used to bucket candidates before running the
// exact pairwise check.
inline std::string iso_invariant(const Graph& g) {
    std::vector<std::string> rows;
    rows.reserve(g.n());
    for (int v = 0; v < g.n(); ++v) {
        std::vector<int> nbr_degs;
        for (int u : g.neighbors(v)) nbr_degs.push_back(g.degree(u));
        std::sort(nbr_degs.begin(), nbr_degs.end());
        int triangles = 0;
        for (int u : g.neighbors(v)) triangles += (g.neighbors(v) & g.neighbors(u)).count();
        std::string row = std::to_string(g.degree(v)) + "t" + std::to_string(triangles) + ":";
        for (int d : nbr_degs) row += std::to_string(d) + ",";
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    std::string key = std::to_string(g.n()) + "e" + std::to_string(g.edge_count()) + "|";
    for (const auto& r : rows) key += r + ";";
    return key;
}

class IsoSet {
public:
    // Returns true if the graph was new and got inserted.
    bool insert(const Graph& g) {
        auto& bucket = buckets_[iso_invariant(g)];
        for (int idx : bucket)
            if (is_isomorphic(graphs_[idx], g)) return false;
        bucket.push_back(static_cast<int>(graphs_.size()));
        graphs_.push_back(g);
        return true;
    }

    std::vector<Graph> take() { return std::move(graphs_); }

private:
    std::unordered_map<std::string, std::vector<int>> buckets_;
    std::vector<Graph> graphs_;
};

}  // namespace detail

// All `patterns`-free graphs up to isomorphism, grouped by vertex count
// 0..max_n. An empty pattern list enumerates all graphs. Works by vertex
// augmentation: freeness is hereditary, so every free graph on n+1 vertices
// arises from a free graph on n vertices by attaching one vertex.
inline std::vector<std::vector<Graph>> free_graphs_up_to(int max_n,
                                                         const std::vector<Graph>& patterns) {
    std::vector<std::vector<Graph>> levels(max_n + 1);
    bool null_free = true;
    for (const auto& p : patterns)
        if (p.n() == 0) null_free = false;
    if (null_free) levels[0].push_back(Graph(0));

    for (int n = 0; n < max_n; ++n) {
        detail::IsoSet next;
        for (const Graph& g : levels[n]) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                Graph h(n + 1);
                for (auto [u, v] : g.edges()) h.add_edge(u, v);
                for (int v = 0; v < n; ++v)
                    if ((mask >> v) & 1) h.add_edge(v, n);
                bool free = true;
                for (const auto& p : patterns) {
                    if (contains_induced_using(h, Bitset::full(n + 1), p, n)) {
                        free = false;
                        break;
                    }
                }
                if (free) next.insert(h);
            }
        }
        levels[n + 1] = next.take();
    }
    return levels;
}

inline std::vector<std::vector<Graph>> all_graphs_up_to(int max_n) {
    return free_graphs_up_to(max_n, {});
}

// ---- seeded random generators ---------------------------------------------

inline Graph random_graph(Rng& rng, int n, double edge_prob = 0.5) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(edge_prob)) g.add_edge(u, v);
    return g;
}

}  // namespace fpart
