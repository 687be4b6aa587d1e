#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpart/graph.hpp"

namespace fpart {

// Certificate for one partition class: either the singleton escape hatch or
// "induces no copy of patterns[pattern]".
struct Certificate {
    enum class Kind { Singleton, Avoids };
    Kind kind = Kind::Singleton;
    int pattern = -1;

    static Certificate singleton() { return {Kind::Singleton, -1}; }
    static Certificate avoids(int i) { return {Kind::Avoids, i}; }
    bool operator==(const Certificate&) const = default;
};

// Ordered list of (vertex set, certificate) classes.
struct FPartition {
    struct ClassEntry {
        Bitset vertices;
        Certificate certificate;
    };
    std::vector<ClassEntry> classes;
};

struct PartitionViolation {
    enum class Kind { Overlap, Gap, SingletonSize, PatternFound };
    Kind kind;
    int class_index = -1;
    int vertex = -1;
    std::optional<Embedding> witness;
};

struct VerifyReport {
    bool valid = false;
    std::optional<PartitionViolation> first_violation;
};

// Checks an FPartition against `target` (which vertices it must cover).
// Throws InputError for certificates referencing unknown pattern indices.
inline VerifyReport verify_partition_of(const Graph& g, const std::vector<Graph>& patterns,
                                        const FPartition& p, const Bitset& target) {
    if (target.size() != g.n()) throw InputError("verify_partition: target universe mismatch");
    Bitset covered(g.n());
    for (std::size_t ci = 0; ci < p.classes.size(); ++ci) {
        const auto& cls = p.classes[ci];
        if (cls.vertices.size() != g.n())
            throw InputError("verify_partition: class universe mismatch");
        if (cls.certificate.kind == Certificate::Kind::Avoids &&
            (cls.certificate.pattern < 0 ||
             cls.certificate.pattern >= static_cast<int>(patterns.size())))
            throw InputError("verify_partition: unknown pattern index " +
                             std::to_string(cls.certificate.pattern));

        if (cls.vertices.intersects(covered)) {
            PartitionViolation v{PartitionViolation::Kind::Overlap, static_cast<int>(ci),
                                 (cls.vertices & covered).first(), std::nullopt};
            return {false, v};
        }
        covered |= cls.vertices;

        if (cls.certificate.kind == Certificate::Kind::Singleton) {
            if (cls.vertices.count() != 1) {
                PartitionViolation v{PartitionViolation::Kind::SingletonSize,
                                     static_cast<int>(ci), -1, std::nullopt};
                return {false, v};
            }
        } else {
            auto emb = contains_induced_in(g, cls.vertices, patterns[cls.certificate.pattern]);
            if (emb) {
                PartitionViolation v{PartitionViolation::Kind::PatternFound,
                                     static_cast<int>(ci), -1, std::move(emb)};
                return {false, v};
            }
        }
    }
    if (covered != target) {
        Bitset missing = target - covered;
        int vertex = missing.any() ? missing.first() : (covered - target).first();
        PartitionViolation v{PartitionViolation::Kind::Gap, -1, vertex, std::nullopt};
        return {false, v};
    }
    return {true, std::nullopt};
}

inline VerifyReport verify_partition(const Graph& g, const std::vector<Graph>& patterns,
                                     const FPartition& p) {
    return verify_partition_of(g, patterns, p, Bitset::full(g.n()));
}

// Intersect every class with `keep`, dropping classes that become empty.
// Certificates survive: pattern-freeness is hereditary and singletons only
// shrink.
inline FPartition restrict_partition(const FPartition& p, const Bitset& keep) {
    FPartition r;
    for (const auto& cls : p.classes) {
        Bitset v = cls.vertices & keep;
        if (v.any()) r.classes.push_back({std::move(v), cls.certificate});
    }
    return r;
}

// ---- {H1,H2}-split oracle --------------------------------------------------

struct SplitWitness {
    Bitset x, y;  // X union Y = V(G); G|X is H1-free, G|Y is H2-free
};

// Exhaustive backtracking over 2-labelings, vertices in ascending order, X
// tried before Y, so the first witness in lexicographic labeling order is
// returned. Refuses graphs larger than `max_vertices`.
inline std::optional<SplitWitness> is_split(const Graph& g, const Graph& h1, const Graph& h2,
                                            int max_vertices = 30) {
    if (g.n() > max_vertices)
        throw BudgetError("is_split: graph has " + std::to_string(g.n()) +
                          " vertices, limit is " + std::to_string(max_vertices));
    Bitset x(g.n()), y(g.n());
    auto search = [&](auto&& self, int v) -> bool {
        if (v == g.n()) return true;
        x.set(v);
        if (!contains_induced_using(g, x, h1, v)) {
            if (self(self, v + 1)) return true;
        }
        x.reset(v);
        y.set(v);
        if (!contains_induced_using(g, y, h2, v)) {
            if (self(self, v + 1)) return true;
        }
        y.reset(v);
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return SplitWitness{x, y};
}

// ---- exact (F,k)-partition oracle -------------------------------------------

struct ExistsOptions {
    std::uint64_t budget = 100'000'000;  // refuse when k^n exceeds this
    bool allow_singletons = true;
    // When set, requires k == patterns.size() and class i must avoid
    // patterns[i] (no singleton escape); this is the mode that agrees with
    // is_split for two patterns.
    bool fixed_assignment = false;
};

namespace detail {
inline std::uint64_t pow_saturating(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    const std::uint64_t cap = ~std::uint64_t{0};
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap;
        r *= base;
    }
    return r;
}
}  // namespace detail

// Exact search over labelings of V(G) into at most k classes. Returns the
// first valid FPartition in lexicographic order over canonical labelings
// (each vertex's class index at most one above the highest index used so
// far), or nullopt. Throws BudgetError when k^n exceeds the budget.
inline std::optional<FPartition> exists_partition(const Graph& g,
                                                  const std::vector<Graph>& patterns, int k,
                                                  const ExistsOptions& opt = {}) {
    if (k < 1) throw InputError("exists_partition: k must be >= 1");
    if (patterns.size() > 63) throw InputError("exists_partition: too many patterns");
    if (opt.fixed_assignment && k != static_cast<int>(patterns.size()))
        throw InputError("exists_partition: fixed assignment requires k == patterns.size()");
    if (detail::pow_saturating(static_cast<std::uint64_t>(k), g.n()) > opt.budget)
        throw BudgetError("exists_partition: k^n exceeds work budget");

    const std::uint64_t all_patterns =
        patterns.empty() ? 0 : (~std::uint64_t{0} >> (64 - patterns.size()));

    std::vector<Bitset> cls(k, Bitset(g.n()));
    std::vector<std::uint64_t> avoid(k);
    for (int c = 0; c < k; ++c)
        avoid[c] = opt.fixed_assignment ? (std::uint64_t{1} << c) : all_patterns;

    auto cls_ok_final = [&](int c) {
        if (cls[c].none()) return true;
        if (avoid[c] != 0) return true;
        return opt.allow_singletons && !opt.fixed_assignment && cls[c].count() == 1;
    };

    auto search = [&](auto&& self, int v, int used) -> bool {
        if (v == g.n()) {
            for (int c = 0; c < k; ++c)
                if (!cls_ok_final(c)) return false;
            return true;
        }
        const int limit = opt.fixed_assignment ? k : std::min(k, used + 1);
        for (int c = 0; c < limit; ++c) {
            const std::uint64_t saved = avoid[c];
            cls[c].set(v);
            std::uint64_t mask = saved;
            for (std::uint64_t m = saved; m;) {
                const int i = std::countr_zero(m);
                m &= m - 1;
                if (contains_induced_using(g, cls[c], patterns[i], v))
                    mask &= ~(std::uint64_t{1} << i);
            }
            avoid[c] = mask;
            const bool viable =
                mask != 0 || (opt.allow_singletons && !opt.fixed_assignment && cls[c].count() == 1);
            if (viable && self(self, v + 1, std::max(used, c + 1))) return true;
            avoid[c] = saved;
            cls[c].reset(v);
        }
        return false;
    };

    if (!search(search, 0, 0)) return std::nullopt;

    FPartition result;
    for (int c = 0; c < k; ++c) {
        if (cls[c].none()) continue;
        Certificate cert;
        if (opt.allow_singletons && cls[c].count() == 1 && !opt.fixed_assignment)
            cert = Certificate::singleton();
        else
            cert = Certificate::avoids(std::countr_zero(avoid[c]));
        result.classes.push_back({cls[c], cert});
    }
    return result;
}

}  // namespace fpart
