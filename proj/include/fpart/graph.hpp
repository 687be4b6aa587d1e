#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpart/bitset.hpp"
#include "fpart/errors.hpp"

namespace fpart {

// Simple undirected graph on vertices 0..n-1, adjacency as bitrows.
// Immutable after construction by convention: builders call add_edge, all
// algorithms take const references.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bitset(n)) {
        if (n < 0) throw InputError("Graph: negative vertex count");
    }

    int n() const { return n_; }

    bool adjacent(int u, int v) const { return adj_[u].test(v); }

    void add_edge(int u, int v) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("Graph: vertex out of range");
        if (u == v) throw InputError("Graph: self-loop");
        adj_[u].set(v);
        adj_[v].set(u);
    }

    const Bitset& neighbors(int v) const { return adj_[v]; }

    int degree(int v) const { return adj_[v].count(); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (int v = 0; v < n_; ++v) twice += adj_[v].count();
        return twice / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n_; ++u)
            for (int v = adj_[u].next(u + 1); v != -1; v = adj_[u].next(v + 1))
                e.emplace_back(u, v);
        return e;
    }

    Bitset vertex_set() const { return Bitset::full(n_); }

    bool operator==(const Graph& o) const = default;

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
};

// An induced embedding of `pattern` into some host: map[i] is the host vertex
// for pattern vertex i. The map preserves adjacency and non-adjacency.
struct Embedding {
    Graph pattern;
    std::vector<int> map;
};

inline bool is_induced_embedding(const Graph& host, const Embedding& e) {
    const int k = e.pattern.n();
    if (static_cast<int>(e.map.size()) != k) return false;
    for (int i = 0; i < k; ++i) {
        if (e.map[i] < 0 || e.map[i] >= host.n()) return false;
        for (int j = i + 1; j < k; ++j) {
            if (e.map[i] == e.map[j]) return false;
            if (host.adjacent(e.map[i], e.map[j]) != e.pattern.adjacent(i, j)) return false;
        }
    }
    return true;
}

// ---- named builders ----------------------------------------------------

inline Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// S_n: the complement of K_n.
inline Graph edgeless_graph(int n) { return Graph(n); }

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle_graph: need n >= 3");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.n() + b.n());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(a.n() + u, a.n() + v);
    return g;
}

inline Graph join_graphs(const Graph& a, const Graph& b) {
    Graph g = disjoint_union(a, b);
    for (int u = 0; u < a.n(); ++u)
        for (int v = 0; v < b.n(); ++v) g.add_edge(u, a.n() + v);
    return g;
}

// ---- basic operations ----------------------------------------------------

inline Graph complement(const Graph& g) {
    Graph c(g.n());
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.adjacent(u, v)) c.add_edge(u, v);
    return c;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> vertices;  // new id -> original id, ascending
};

inline InducedSubgraph induced(const Graph& g, const Bitset& s) {
    if (s.size() != g.n()) throw InputError("induced: vertex set universe mismatch");
    InducedSubgraph r;
    r.vertices = s.to_vector();
    r.graph = Graph(static_cast<int>(r.vertices.size()));
    for (std::size_t i = 0; i < r.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < r.vertices.size(); ++j)
            if (g.adjacent(r.vertices[i], r.vertices[j]))
                r.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
    return r;
}

// Connected components in canonical order (by minimum vertex).
inline std::vector<Bitset> components(const Graph& g) {
    std::vector<Bitset> comps;
    Bitset seen(g.n());
    for (int start = 0; start < g.n(); ++start) {
        if (seen.test(start)) continue;
        Bitset comp(g.n());
        comp.set(start);
        Bitset frontier(g.n());
        frontier.set(start);
        while (frontier.any()) {
            Bitset next(g.n());
            for (int v : frontier) next |= g.neighbors(v);
            next -= comp;
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline std::vector<Bitset> anticomponents(const Graph& g) { return components(complement(g)); }

// Blocks: maximal 2-connected subgraphs and K_2 bridges, as vertex sets in
// canonical order. Isolated vertices appear in no block.
inline std::vector<Bitset> blocks(const Graph& g) {
    const int n = g.n();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::pair<int, int>> edge_stack;
    std::vector<Bitset> out;
    int timer = 0;

    // Iterative DFS; each frame tracks the neighbor scan position.
    struct Frame {
        int v, parent, next;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack;
        disc[root] = low[root] = timer++;
        stack.push_back({root, -1, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            int w = g.neighbors(f.v).next(f.next);
            if (w != -1) {
                f.next = w + 1;
                if (disc[w] == -1) {
                    edge_stack.emplace_back(f.v, w);
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, f.v, 0});
                } else if (w != f.parent && disc[w] < disc[f.v]) {
                    edge_stack.emplace_back(f.v, w);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                int v = f.v, parent = f.parent;
                stack.pop_back();
                if (parent != -1) {
                    low[parent] = std::min(low[parent], low[v]);
                    if (low[v] >= disc[parent]) {
                        Bitset blk(n);
                        while (true) {
                            auto [a, b] = edge_stack.back();
                            edge_stack.pop_back();
                            blk.set(a);
                            blk.set(b);
                            if (a == parent && b == v) break;
                        }
                        out.push_back(std::move(blk));
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- induced-subgraph isomorphism ----------------------------------------

namespace detail {

// Backtracking search for an induced embedding of `pattern` into `host`,
// restricted to host vertices in `within`. Pattern vertices are processed in
// ascending (degree, id) order; host candidates in ascending id, so the first
// embedding found is deterministic. If `must_use` >= 0, the embedding must
// cover that host vertex.
inline std::optional<Embedding> find_induced(const Graph& host, const Graph& pattern,
                                             const Bitset& within, int must_use) {
    const int k = pattern.n();
    if (k == 0) return Embedding{pattern, {}};
    if (k > within.count()) return std::nullopt;

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return pattern.degree(a) < pattern.degree(b); });

    std::vector<int> within_deg(host.n(), 0);
    for (int v : within) within_deg[v] = (host.neighbors(v) & within).count();

    std::vector<int> assign(k, -1);  // pattern id -> host id
    Bitset used(host.n());

    auto search = [&](auto&& self, int depth) -> bool {
        if (depth == k) return must_use < 0 || used.test(must_use);
        const int p = order[depth];
        const int pdeg = pattern.degree(p);
        for (int v : within) {
            if (used.test(v)) continue;
            if (must_use >= 0 && depth == k - 1 && !used.test(must_use) && v != must_use)
                continue;
            if (within_deg[v] < pdeg) continue;
            bool ok = true;
            for (int d = 0; d < depth; ++d) {
                const int q = order[d];
                if (pattern.adjacent(p, q) != host.adjacent(v, assign[q])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            assign[p] = v;
            used.set(v);
            if (self(self, depth + 1)) return true;
            used.reset(v);
            assign[p] = -1;
        }
        return false;
    };

    if (!search(search, 0)) return std::nullopt;
    return Embedding{pattern, assign};
}

}  // namespace detail

// First induced embedding of `pattern` in `host` under the fixed search
// order, or nullopt.
inline std::optional<Embedding> contains_induced(const Graph& host, const Graph& pattern) {
    return detail::find_induced(host, pattern, Bitset::full(host.n()), -1);
}

// Search restricted to host vertices in `within`.
inline std::optional<Embedding> contains_induced_in(const Graph& host, const Bitset& within,
                                                    const Graph& pattern) {
    return detail::find_induced(host, pattern, within, -1);
}

// Search restricted to `within` whose image must contain `must_use`.
inline std::optional<Embedding> contains_induced_using(const Graph& host, const Bitset& within,
                                                       const Graph& pattern, int must_use) {
    return detail::find_induced(host, pattern, within, must_use);
}

inline bool is_isomorphic(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    return contains_induced(a, b).has_value() && contains_induced(b, a).has_value();
}

// Length of a shortest cycle, or nullopt for forests.
inline std::optional<int> girth(const Graph& g) {
    const int n = g.n();
    int best = -1;
    std::vector<int> dist(n), parent(n);
    std::vector<int> queue;
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        queue.clear();
        queue.push_back(root);
        dist[root] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            if (best != -1 && 2 * dist[u] >= best) break;
            for (int v : g.neighbors(u)) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if (v != parent[u]) {
                    int len = dist[u] + dist[v] + 1;
                    if (best == -1 || len < best) best = len;
                }
            }
        }
    }
    if (best == -1) return std::nullopt;
    return best;
}

}  // namespace fpart
