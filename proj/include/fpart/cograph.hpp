#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "fpart/partition_engine.hpp"

namespace fpart {

// Build tree of a cograph: a leaf is one vertex, a union node realizes the
// disjoint union of its children, a join node additionally makes the children
// complete to each other. Factories normalize: same-op children are
// flattened and single-child nodes collapse, so union children are never
// unions and join children are never joins.
class Cotree {
public:
    enum class Op { Leaf, Union, Join };

    Cotree() = default;

    static Cotree leaf() { return Cotree(); }

    static Cotree make_union(std::vector<Cotree> children) {
        return make_internal(Op::Union, std::move(children));
    }

    static Cotree make_join(std::vector<Cotree> children) {
        return make_internal(Op::Join, std::move(children));
    }

    Op op() const { return op_; }
    const std::vector<Cotree>& children() const { return children_; }
    int leaf_count() const { return leaves_; }
    int height() const { return height_; }

    // Swap union and join throughout: realizes the complement graph.
    Cotree complemented() const {
        if (op_ == Op::Leaf) return *this;
        std::vector<Cotree> kids;
        kids.reserve(children_.size());
        for (const auto& c : children_) kids.push_back(c.complemented());
        return make_internal(op_ == Op::Union ? Op::Join : Op::Union, std::move(kids));
    }

    // Canonical string form; two normalized cotrees realize isomorphic
    // graphs exactly when their keys match.
    std::string canonical_key() const {
        if (op_ == Op::Leaf) return "L";
        std::vector<std::string> keys;
        keys.reserve(children_.size());
        for (const auto& c : children_) keys.push_back(c.canonical_key());
        std::sort(keys.begin(), keys.end());
        std::string out = op_ == Op::Union ? "U(" : "J(";
        for (const auto& k : keys) out += k + ",";
        out += ")";
        return out;
    }

private:
    static Cotree make_internal(Op op, std::vector<Cotree> children) {
        if (children.empty()) throw InputError("Cotree: internal node needs children");
        std::vector<Cotree> flat;
        for (auto& c : children) {
            if (c.op_ == op) {
                for (auto& gc : c.children_) flat.push_back(std::move(gc));
            } else {
                flat.push_back(std::move(c));
            }
        }
        if (flat.size() == 1) return std::move(flat[0]);
        Cotree t;
        t.op_ = op;
        t.leaves_ = 0;
        t.height_ = 0;
        for (const auto& c : flat) {
            t.leaves_ += c.leaves_;
            t.height_ = std::max(t.height_, c.height_);
        }
        t.height_ += 1;
        t.children_ = std::move(flat);
        return t;
    }

    Op op_ = Op::Leaf;
    std::vector<Cotree> children_;
    int leaves_ = 1;
    int height_ = 0;
};

inline int height(const Cotree& t) { return t.height(); }

// Realized graph; leaves are numbered in depth-first order.
inline Graph realize(const Cotree& t) {
    Graph g(t.leaf_count());
    auto build = [&](auto&& self, const Cotree& node, int offset) -> int {
        if (node.op() == Cotree::Op::Leaf) return offset + 1;
        std::vector<std::pair<int, int>> spans;
        int at = offset;
        for (const auto& c : node.children()) {
            int end = self(self, c, at);
            spans.emplace_back(at, end);
            at = end;
        }
        if (node.op() == Cotree::Op::Join) {
            for (std::size_t i = 0; i < spans.size(); ++i)
                for (std::size_t j = i + 1; j < spans.size(); ++j)
                    for (int u = spans[i].first; u < spans[i].second; ++u)
                        for (int v = spans[j].first; v < spans[j].second; ++v) g.add_edge(u, v);
        }
        return at;
    };
    build(build, t, 0);
    return g;
}

// Cotree of G, or nullopt when G is not a cograph (contains an induced P_4).
// The null graph has no cotree.
inline std::optional<Cotree> is_cograph(const Graph& g) {
    if (g.n() == 0) return std::nullopt;
    auto rec = [](auto&& self, const Graph& cur) -> std::optional<Cotree> {
        if (cur.n() == 1) return Cotree::leaf();
        auto comps = components(cur);
        if (comps.size() >= 2) {
            std::vector<Cotree> kids;
            for (const auto& c : comps) {
                auto sub = self(self, induced(cur, c).graph);
                if (!sub) return std::nullopt;
                kids.push_back(std::move(*sub));
            }
            return Cotree::make_union(std::move(kids));
        }
        auto antis = anticomponents(cur);
        if (antis.size() >= 2) {
            std::vector<Cotree> kids;
            for (const auto& a : antis) {
                auto sub = self(self, induced(cur, a).graph);
                if (!sub) return std::nullopt;
                kids.push_back(std::move(*sub));
            }
            return Cotree::make_join(std::move(kids));
        }
        return std::nullopt;
    };
    return rec(rec, g);
}

namespace detail {

inline std::vector<Cotree> cotree_anticomponents(const Cotree& t) {
    if (t.op() == Cotree::Op::Join) return t.children();
    return {t};
}

inline std::vector<Cotree> cotree_components(const Cotree& t) {
    if (t.op() == Cotree::Op::Union) return t.children();
    return {t};
}

inline std::vector<Cotree> dedup_cotrees(const std::vector<Cotree>& list) {
    std::vector<Cotree> out;
    std::vector<std::string> seen;
    for (const auto& t : list) {
        std::string key = t.canonical_key();
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(std::move(key));
            out.push_back(t);
        }
    }
    return out;
}

}  // namespace detail

// Connected (F,P)-universal cograph of height exactly k: every partition of
// its vertex set into P parts has a part containing every member of F.
// Members of F must be connected cographs of height at most k.
inline Cotree universal_cograph(const std::vector<Cotree>& f, int p, int k) {
    if (p < 1 || k < 1) throw InputError("universal_cograph: need P >= 1 and k >= 1");
    if (f.empty()) throw InputError("universal_cograph: empty pattern family");
    for (const auto& t : f) {
        if (t.op() == Cotree::Op::Union)
            throw HypothesisError("universal_cograph: family member is disconnected");
        if (t.height() > k)
            throw HypothesisError("universal_cograph: family member has height > k");
    }

    if (k == 1) {
        // Members are complete graphs; the complete graph on mP vertices
        // works (at least two vertices so the height is exactly 1).
        int m = 0;
        for (const auto& t : f) m = std::max(m, t.leaf_count());
        int size = std::max(m * p, 2);
        return Cotree::make_join(std::vector<Cotree>(size, Cotree::leaf()));
    }

    std::vector<Cotree> a;
    int s = 1;
    for (const auto& t : f) {
        auto antis = detail::cotree_anticomponents(t);
        s = std::max(s, static_cast<int>(antis.size()));
        for (auto& x : antis) a.push_back(std::move(x));
    }
    a = detail::dedup_cotrees(a);

    std::vector<Cotree> a_complements;
    a_complements.reserve(a.size());
    for (const auto& t : a) a_complements.push_back(t.complemented());

    Cotree c = universal_cograph(a_complements, p, k - 1).complemented();
    const int copies = (s - 1) * p + 2;
    return Cotree::make_join(std::vector<Cotree>(copies, c));
}

// Exhaustive universality check over all P-labelings (canonical class order,
// which covers every partition). Refuses when P^n exceeds the budget.
inline bool is_universal_bruteforce(const Graph& c, const std::vector<Graph>& f, int p,
                                    std::uint64_t budget = 10'000'000) {
    if (p < 1) throw InputError("is_universal_bruteforce: need P >= 1");
    if (detail::pow_saturating(static_cast<std::uint64_t>(p), c.n()) > budget)
        throw BudgetError("is_universal_bruteforce: P^n exceeds work budget");

    struct WordsHash {
        std::size_t operator()(const std::vector<std::uint64_t>& w) const {
            std::size_t h = w.size();
            for (auto x : w) h = h * 1000003ULL ^ std::hash<std::uint64_t>{}(x);
            return h;
        }
    };
    std::unordered_map<std::vector<std::uint64_t>, bool, WordsHash> memo;
    auto contains_all = [&](const Bitset& mask) {
        auto it = memo.find(mask.words());
        if (it != memo.end()) return it->second;
        bool all = true;
        for (const auto& pat : f)
            if (!contains_induced_in(c, mask, pat)) {
                all = false;
                break;
            }
        memo.emplace(mask.words(), all);
        return all;
    };

    std::vector<Bitset> cls(p, Bitset(c.n()));
    // Search for a counterexample partition: one where no class contains all
    // of F. A class that already contains everything can only grow, so that
    // branch can never yield a counterexample.
    auto search = [&](auto&& self, int v, int used) -> bool {
        if (v == c.n()) return true;  // counterexample completed
        const int limit = std::min(p, used + 1);
        for (int ci = 0; ci < limit; ++ci) {
            cls[ci].set(v);
            if (!contains_all(cls[ci])) {
                if (self(self, v + 1, std::max(used, ci + 1))) return true;
            }
            cls[ci].reset(v);
        }
        return false;
    };
    return !search(search, 0, 0);
}

struct CographSplitResult {
    Bitset x, y;
    Cotree htilde, jtilde;
    int p = 1;                   // class count fed into the universal construction
    DriverResult base;           // the underlying (c(H) u ac(J), P)-partition
};

// Theorem-3.3 style split: for cographs H (anticonnected) and J (connected)
// of equal height k+1 >= 2 and an {H,J}-free G, produces X u Y = V(G) with
// G|X free of the connected height-k universal cograph Htilde and G|Y free
// of the anticonnected Jtilde.
inline CographSplitResult cograph_split(const Graph& g, const Cotree& h, const Cotree& j) {
    if (h.op() != Cotree::Op::Union)
        throw HypothesisError("cograph_split: H must be anticonnected (and have >= 2 vertices)");
    if (j.op() != Cotree::Op::Join)
        throw HypothesisError("cograph_split: J must be connected (and have >= 2 vertices)");
    if (h.height() != j.height())
        throw HypothesisError("cograph_split: H and J must have equal height");
    const int k = h.height() - 1;
    if (k < 1) throw HypothesisError("cograph_split: height must be at least 2");

    CographSplitResult res;
    res.base = disconnected_partition(g, realize(h), realize(j));
    res.p = std::max<int>(1, static_cast<int>(res.base.partition.classes.size()));

    std::vector<Cotree> a = detail::dedup_cotrees(detail::cotree_components(h));
    std::vector<Cotree> b = detail::dedup_cotrees(detail::cotree_anticomponents(j));
    std::vector<Cotree> b_complements;
    b_complements.reserve(b.size());
    for (const auto& t : b) b_complements.push_back(t.complemented());

    res.htilde = universal_cograph(a, res.p, k);
    res.jtilde = universal_cograph(b_complements, res.p, k).complemented();

    // Classes certified by a component of H go to X, classes certified by an
    // anticomponent of J go to Y; singleton classes go to X.
    res.x = Bitset(g.n());
    res.y = Bitset(g.n());
    for (const auto& cls : res.base.partition.classes) {
        bool to_x = cls.certificate.kind == Certificate::Kind::Singleton ||
                    cls.certificate.pattern < static_cast<int>(res.base.h_pattern_count);
        (to_x ? res.x : res.y) |= cls.vertices;
    }
    return res;
}

}  // namespace fpart
