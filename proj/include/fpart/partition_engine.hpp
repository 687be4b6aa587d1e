#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fpart/oracles.hpp"

namespace fpart {

// Which components of H form H1 and which anticomponents of J form J1
// (indices into the canonical components/anticomponents order).
struct SplitChoice {
    std::vector<int> h1_components;
    std::vector<int> j1_anticomponents;
};

struct NormalizationRecord {
    bool complemented = false;
    bool side_swapped = false;
    std::string component_choice;
    // engine pattern index -> user pattern index into {H1, H2, J1, J2}
    std::array<int, 4> certificate_map{{0, 1, 2, 3}};
};

// Normalized forbidden pair. H is the disjoint union of H1 (vertices 0..m-1)
// and H2; J is the join of J1 and J2; |V(H1)| = m is the maximum of the four
// block sizes. Hstar is H induced on V(H1) plus the single H2-vertex hstar.
struct ForbiddenPair {
    Graph H, J;
    Graph H1, H2, J1, J2;
    int m = 0;
    Graph Hstar;
    int hstar = 0;  // vertex id of the H2-vertex inside Hstar (== m)
};

// A T-piece: an induced embedding of Hstar|T into the host graph. `image[i]`
// is the host vertex for the i-th smallest member of `pattern_vertices`.
struct PieceState {
    Bitset pattern_vertices;  // subset of V(Hstar)
    std::vector<int> image;
};

// phi(t) = 2(m+1)^(m-t) for 0 <= t <= m-1, and 1 for t = m.
inline std::uint64_t phi(int t, int m) {
    if (m < 1 || m > 15) throw InputError("phi: m out of supported range");
    if (t < 0 || t > m) throw InputError("phi: t out of range");
    if (t == m) return 1;
    std::uint64_t r = 2;
    for (int i = 0; i < m - t; ++i) r *= static_cast<std::uint64_t>(m + 1);
    return r;
}

namespace detail {

inline Graph union_of(const Graph& g, const std::vector<Bitset>& parts,
                      const std::vector<int>& pick) {
    Bitset s(g.n());
    for (int i : pick) s |= parts[i];
    return induced(g, s).graph;
}

inline Graph rest_of(const Graph& g, const std::vector<Bitset>& parts,
                     const std::vector<int>& pick) {
    Bitset s(g.n());
    for (int i : pick) s |= parts[i];
    return induced(g, Bitset::full(g.n()) - s).graph;
}

inline void validate_choice(const std::vector<int>& pick, std::size_t count, const char* side) {
    if (pick.empty() || pick.size() >= count)
        throw InputError(std::string("normalize_pair: split must pick a nonempty proper "
                                     "subset of parts on the ") +
                         side + " side");
    std::vector<int> sorted = pick;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("normalize_pair: duplicate part index");
    if (sorted.front() < 0 || sorted.back() >= static_cast<int>(count))
        throw InputError("normalize_pair: part index out of range");
}

inline HypothesisError embedding_error(const std::string& what, const std::string& name,
                                       const Graph& pattern, std::vector<int> map) {
    return HypothesisError(what, name, pattern.n(), pattern.edges(), std::move(map));
}

}  // namespace detail

// Largest component of H as H1 and largest anticomponent of J as J1 (ties by
// canonical order).
inline SplitChoice default_split_choice(const Graph& h, const Graph& j) {
    auto pick_largest = [](const std::vector<Bitset>& parts) {
        if (parts.empty()) return std::vector<int>{0};
        int best = 0;
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (parts[i].count() > parts[best].count()) best = static_cast<int>(i);
        return std::vector<int>{best};
    };
    return {pick_largest(components(h)), pick_largest(anticomponents(j))};
}

struct UserSplit {
    Graph h1, h2, j1, j2;
};

inline UserSplit apply_split_choice(const Graph& h, const Graph& j, const SplitChoice& choice) {
    auto comps = components(h);
    if (comps.size() < 2) throw HypothesisError("normalize_pair: H is connected");
    auto antis = anticomponents(j);
    if (antis.size() < 2) throw HypothesisError("normalize_pair: J^c is connected");
    detail::validate_choice(choice.h1_components, comps.size(), "H");
    detail::validate_choice(choice.j1_anticomponents, antis.size(), "J");
    return {detail::union_of(h, comps, choice.h1_components),
            detail::rest_of(h, comps, choice.h1_components),
            detail::union_of(j, antis, choice.j1_anticomponents),
            detail::rest_of(j, antis, choice.j1_anticomponents)};
}

// Applies the WLOG step: complement and/or swap so that |V(H1)| is the
// maximum of the four block sizes.
inline std::pair<ForbiddenPair, NormalizationRecord> normalize_pair(
    const Graph& h, const Graph& j, const SplitChoice& choice) {
    UserSplit u = apply_split_choice(h, j, choice);
    const int h1 = u.h1.n(), h2 = u.h2.n(), j1 = u.j1.n(), j2 = u.j2.n();
    const int m = std::max({h1, h2, j1, j2});

    NormalizationRecord rec;
    Graph a1, a2, b1, b2;
    if (h1 == m) {
        a1 = u.h1, a2 = u.h2, b1 = u.j1, b2 = u.j2;
        rec.certificate_map = {0, 1, 2, 3};
    } else if (h2 == m) {
        rec.side_swapped = true;
        a1 = u.h2, a2 = u.h1, b1 = u.j1, b2 = u.j2;
        rec.certificate_map = {1, 0, 2, 3};
    } else if (j1 == m) {
        rec.complemented = true;
        a1 = complement(u.j1), a2 = complement(u.j2);
        b1 = complement(u.h1), b2 = complement(u.h2);
        rec.certificate_map = {2, 3, 0, 1};
    } else {
        rec.complemented = true;
        rec.side_swapped = true;
        a1 = complement(u.j2), a2 = complement(u.j1);
        b1 = complement(u.h1), b2 = complement(u.h2);
        rec.certificate_map = {3, 2, 0, 1};
    }
    rec.component_choice = "H1=" + std::to_string(h1) + "v,H2=" + std::to_string(h2) +
                           "v,J1=" + std::to_string(j1) + "v,J2=" + std::to_string(j2) + "v";

    ForbiddenPair fp;
    fp.H1 = a1, fp.H2 = a2, fp.J1 = b1, fp.J2 = b2;
    fp.m = m;
    fp.H = disjoint_union(a1, a2);
    fp.J = join_graphs(b1, b2);
    fp.hstar = m;
    Bitset star(fp.H.n());
    for (int v = 0; v <= m; ++v) star.set(v);
    fp.Hstar = induced(fp.H, star).graph;
    detail::engine_check(fp.H1.n() == m, "normalization must make |V(H1)| = m");
    return {fp, rec};
}

inline std::pair<ForbiddenPair, NormalizationRecord> normalize_pair(const Graph& h,
                                                                    const Graph& j) {
    return normalize_pair(h, j, default_split_choice(h, j));
}

// Vertices of G that extend the piece by pattern vertex `added`: every v
// outside the image such that mapping `added` to v is still an induced
// embedding of Hstar|(T + added).
inline Bitset corresponding_set(const Graph& g, const ForbiddenPair& fp, const PieceState& piece,
                                int added) {
    if (added < 0 || added >= fp.Hstar.n() || piece.pattern_vertices.test(added))
        throw InputError("corresponding_set: added vertex must extend the piece");
    if (piece.pattern_vertices.size() != fp.Hstar.n())
        throw InputError("corresponding_set: piece universe mismatch");
    if (static_cast<int>(piece.image.size()) != piece.pattern_vertices.count())
        throw InputError("corresponding_set: piece image size mismatch");
    Bitset y = Bitset::full(g.n());
    int i = 0;
    for (int u : piece.pattern_vertices) {
        const int gu = piece.image[i++];
        if (fp.Hstar.adjacent(added, u))
            y &= g.neighbors(gu);
        else
            y &= ~g.neighbors(gu);
        y.reset(gu);
    }
    return y;
}

// One returned level of the recursion: a partition of the corresponding set
// of `extension` over the piece it was called with. Certificates index the
// engine pattern list {H1, H2, J1, J2}.
struct PieceResult {
    int extension = -1;
    FPartition partition;
};

namespace detail {

class PairEngine {
public:
    PairEngine(const Graph& g, const ForbiddenPair& fp)
        : g_(g), fp_(fp), patterns_{fp.H1, fp.H2, fp.J1, fp.J2} {}

    const std::vector<Graph>& patterns() const { return patterns_; }

    PieceResult run(const Bitset& t_set, const std::vector<int>& image) {
        const int t = t_set.count();
        PieceResult res = t == fp_.m ? base_case(t_set, image) : step_case(t_set, image);
        engine_check(res.partition.classes.size() <= phi(t, fp_.m),
                     "class count exceeds phi(t)");
        return res;
    }

private:
    PieceResult base_case(const Bitset& t_set, const std::vector<int>& image) {
        // T = V(H1); the only extension adds hstar, and the corresponding set
        // is anticomplete to the image, so it must be H2-free.
        Bitset y = corresponding_set(g_, fp_, {t_set, image}, fp_.hstar);
        for (int gu : image)
            engine_check(!(y & g_.neighbors(gu)).any(),
                         "corresponding set of an H1-piece must be anticomplete to its image");
        if (auto emb = contains_induced_in(g_, y, fp_.H2)) {
            std::vector<int> map(fp_.H.n());
            for (int i = 0; i < fp_.m; ++i) map[i] = image[i];
            for (int i = 0; i < fp_.H2.n(); ++i) map[fp_.m + i] = emb->map[i];
            throw embedding_error("host graph contains H (found while certifying an H1-piece)",
                                  "H", fp_.H, std::move(map));
        }
        PieceResult res;
        res.extension = fp_.hstar;
        if (y.any()) res.partition.classes.push_back({y, Certificate::avoids(1)});
        return res;
    }

    PieceResult step_case(const Bitset& t_set, const std::vector<int>& image) {
        const int t = t_set.count();
        int s = -1;
        for (int v = 0; v < fp_.m; ++v)
            if (!t_set.test(v)) {
                s = v;
                break;
            }
        engine_check(s >= 0, "no extension inside H1");

        Bitset ys = corresponding_set(g_, fp_, {t_set, image}, s);
        PieceResult res;
        res.extension = s;
        if (ys.none()) return res;

        Bitset s_set = t_set;
        s_set.set(s);
        const int s_pos = rank_of(s_set, s);

        // Typing loop: recurse on every one-vertex extension of the piece.
        std::map<int, Bitset> types;
        std::map<int, PieceResult> sub;
        for (int v : ys) {
            std::vector<int> child(image);
            child.insert(child.begin() + s_pos, v);
            PieceResult r = run(s_set, child);
            types.try_emplace(r.extension, Bitset(g_.n())).first->second.set(v);
            sub[v] = std::move(r);
        }
        engine_check(static_cast<int>(types.size()) <= fp_.m - t,
                     "more than m-t distinct types");

        // If every type class misses a pattern, the typed partition works.
        int failing = -1;
        for (const auto& [r, z] : types) {
            int avoided = -1;
            for (int i = 0; i < 4; ++i)
                if (!contains_induced_in(g_, z, patterns_[i])) {
                    avoided = i;
                    break;
                }
            if (avoided < 0) {
                failing = r;
                break;
            }
            res.partition.classes.push_back({z, Certificate::avoids(avoided)});
        }
        if (failing < 0) return res;
        res.partition.classes.clear();

        // Some type class contains all four patterns: rebuild a partition of
        // the corresponding set of that type from a forbidden block B.
        const int r = failing;
        const Bitset& zr = types.at(r);
        Bitset a = corresponding_set(g_, fp_, {t_set, image}, r);
        const bool rs_adjacent = fp_.Hstar.adjacent(r, s);
        const int b_pattern = rs_adjacent ? 0 : 2;   // H1 : J1
        const int a0_cert = rs_adjacent ? 1 : 3;     // H2 : J2

        auto emb = contains_induced_in(g_, zr, patterns_[b_pattern]);
        engine_check(emb.has_value(), "type class lost the block pattern");
        Bitset b_set(g_.n());
        for (int v : emb->map) b_set.set(v);

        Bitset rem = a - b_set;
        // A_0: complete to B when B realizes J1, anticomplete when it
        // realizes H1.
        Bitset a0 = rem;
        for (int b : b_set) {
            if (rs_adjacent)
                a0 -= g_.neighbors(b);
            else
                a0 &= g_.neighbors(b);
        }
        check_a0(a0, *emb, rs_adjacent);

        res.extension = r;
        for (int b : b_set)
            if (a.test(b)) {
                Bitset one(g_.n());
                one.set(b);
                res.partition.classes.push_back({one, Certificate::singleton()});
            }
        if (a0.any()) res.partition.classes.push_back({a0, Certificate::avoids(a0_cert)});

        Bitset left = rem - a0;
        for (int b : b_set) {
            if (!left.any()) break;
            Bitset bucket = left;
            if (rs_adjacent)
                bucket &= g_.neighbors(b);
            else
                bucket -= g_.neighbors(b);
            if (!bucket.any()) continue;
            left -= bucket;
            const PieceResult& child = sub.at(b);
            engine_check(child.extension == r, "bucket owner has unexpected type");
            for (auto& cls : restrict_partition(child.partition, bucket).classes)
                res.partition.classes.push_back(std::move(cls));
        }
        engine_check(left.none(), "vertices of A left uncovered");
        return res;
    }

    // A_0 was certified a0_cert-free by J-freeness (or H-freeness) of the
    // host; verify it and surface a full witness when the hypothesis fails.
    void check_a0(const Bitset& a0, const Embedding& block_emb, bool rs_adjacent) {
        if (rs_adjacent) {
            if (auto emb = contains_induced_in(g_, a0, fp_.H2)) {
                std::vector<int> map(fp_.H.n());
                for (int i = 0; i < fp_.m; ++i) map[i] = block_emb.map[i];
                for (int i = 0; i < fp_.H2.n(); ++i) map[fp_.m + i] = emb->map[i];
                throw embedding_error("host graph contains H (A_0 is not H2-free)", "H", fp_.H,
                                      std::move(map));
            }
        } else {
            if (auto emb = contains_induced_in(g_, a0, fp_.J2)) {
                std::vector<int> map(fp_.J.n());
                for (int i = 0; i < fp_.J1.n(); ++i) map[i] = block_emb.map[i];
                for (int i = 0; i < fp_.J2.n(); ++i) map[fp_.J1.n() + i] = emb->map[i];
                throw embedding_error("host graph contains J (A_0 is not J2-free)", "J", fp_.J,
                                      std::move(map));
            }
        }
    }

    static int rank_of(const Bitset& set, int member) {
        int r = 0;
        for (int v : set) {
            if (v == member) return r;
            ++r;
        }
        throw std::logic_error("rank_of: member not in set");
    }

    const Graph& g_;
    const ForbiddenPair& fp_;
    std::vector<Graph> patterns_;
};

}  // namespace detail

// Public form of one recursion level, for inspection and tests. The piece
// must live inside H1.
inline PieceResult partition_from_piece(const Graph& g, const ForbiddenPair& fp,
                                        const PieceState& piece) {
    for (int u : piece.pattern_vertices)
        if (u >= fp.m) throw InputError("partition_from_piece: piece must lie inside H1");
    // validate the piece is an induced embedding
    Embedding emb{induced(fp.Hstar, piece.pattern_vertices).graph, piece.image};
    if (!is_induced_embedding(g, emb))
        throw InputError("partition_from_piece: piece is not an induced embedding");
    detail::PairEngine engine(g, fp);
    return engine.run(piece.pattern_vertices, piece.image);
}

struct TwoGraphsResult {
    FPartition partition;             // certificates index `patterns`
    std::vector<Graph> patterns;      // user-side {H1, H2, J1, J2}
    ForbiddenPair pair;               // normalized engine pair
    NormalizationRecord record;
    std::uint64_t class_budget = 0;   // 2(m+1)^m
};

// Theorem-2.4 style partition: every {H,J}-free G gets at most 2(m+1)^m
// classes, each a singleton or certified {H1|H2|J1|J2}-free.
inline TwoGraphsResult two_graphs_partition(const Graph& g, const Graph& h, const Graph& j,
                                            const SplitChoice& choice) {
    UserSplit user = apply_split_choice(h, j, choice);
    auto [fp, rec] = normalize_pair(h, j, choice);

    if (auto emb = contains_induced(g, h))
        throw detail::embedding_error("two_graphs_partition: G contains H", "H", h, emb->map);
    if (auto emb = contains_induced(g, j))
        throw detail::embedding_error("two_graphs_partition: G contains J", "J", j, emb->map);

    TwoGraphsResult res;
    res.patterns = {user.h1, user.h2, user.j1, user.j2};
    res.record = rec;
    res.class_budget = 2 * detail::pow_saturating(fp.m + 1, fp.m);

    const Graph ge = rec.complemented ? complement(g) : g;
    FPartition engine_partition;
    if (!contains_induced(ge, fp.H1)) {
        // G is H1-free: the whole vertex set is one class.
        if (g.n() > 0)
            engine_partition.classes.push_back({Bitset::full(g.n()), Certificate::avoids(0)});
    } else {
        detail::PairEngine engine(ge, fp);
        PieceResult top = engine.run(Bitset(fp.Hstar.n()), {});
        engine_partition = std::move(top.partition);
    }

    for (auto& cls : engine_partition.classes) {
        Certificate cert = cls.certificate;
        if (cert.kind == Certificate::Kind::Avoids)
            cert = Certificate::avoids(rec.certificate_map[cert.pattern]);
        res.partition.classes.push_back({std::move(cls.vertices), cert});
    }
    res.pair = std::move(fp);
    detail::engine_check(res.partition.classes.size() <= res.class_budget,
                         "partition exceeds 2(m+1)^m classes");
    return res;
}

inline TwoGraphsResult two_graphs_partition(const Graph& g, const Graph& h, const Graph& j) {
    return two_graphs_partition(g, h, j, default_split_choice(h, j));
}

struct DriverResult {
    FPartition partition;          // certificates index `patterns`
    std::vector<Graph> patterns;   // dedup c(H) then dedup ac(J)
    std::size_t h_pattern_count = 0;
    std::uint64_t bound_product = 1;  // upper bound on classes, saturating
};

namespace detail {

inline std::vector<Graph> dedup_up_to_iso(const Graph& g, const std::vector<Bitset>& parts) {
    std::vector<Graph> out;
    for (const auto& p : parts) {
        Graph sub = induced(g, p).graph;
        bool fresh = true;
        for (const auto& seen : out)
            if (is_isomorphic(seen, sub)) {
                fresh = false;
                break;
            }
        if (fresh) out.push_back(std::move(sub));
    }
    return out;
}

inline int find_iso_index(const std::vector<Graph>& list, std::size_t from, std::size_t to,
                          const Graph& g) {
    for (std::size_t i = from; i < to; ++i)
        if (is_isomorphic(list[i], g)) return static_cast<int>(i);
    throw std::logic_error("driver: certificate pattern not in c(H) u ac(J)");
}

inline std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > ~std::uint64_t{0} / a) return ~std::uint64_t{0};
    return a * b;
}

inline std::uint64_t driver_bound(const Graph& h, const Graph& j) {
    if (components(h).size() == 1 || anticomponents(j).size() == 1) return 1;
    SplitChoice choice = default_split_choice(h, j);
    UserSplit u = apply_split_choice(h, j, choice);
    const int m = std::max({u.h1.n(), u.h2.n(), u.j1.n(), u.j2.n()});
    std::uint64_t level = 2 * pow_saturating(m + 1, m);
    std::uint64_t sub = std::max(driver_bound(u.h2, j), driver_bound(h, u.j2));
    return mul_saturating(level, sub);
}

}  // namespace detail

// Theorem-1.3 style driver: repeatedly applies two_graphs_partition until
// every class is a singleton or certified F-free for a single component of H
// or anticomponent of J.
inline DriverResult disconnected_partition(const Graph& g, const Graph& h, const Graph& j) {
    if (auto emb = contains_induced(g, h))
        throw detail::embedding_error("disconnected_partition: G contains H", "H", h, emb->map);
    if (auto emb = contains_induced(g, j))
        throw detail::embedding_error("disconnected_partition: G contains J", "J", j, emb->map);

    DriverResult res;
    std::vector<Graph> ch = detail::dedup_up_to_iso(h, components(h));
    std::vector<Graph> aj = detail::dedup_up_to_iso(j, anticomponents(j));
    res.h_pattern_count = ch.size();
    res.patterns = std::move(ch);
    for (auto& p : aj) res.patterns.push_back(std::move(p));
    res.bound_product = detail::driver_bound(h, j);

    // Recursion: certificates for single components/anticomponents are final;
    // classes certified by a union are re-partitioned with the smaller pair.
    auto rec = [&](auto&& self, const Graph& gs, const Graph& hc, const Graph& jc,
                   FPartition& out, const std::vector<int>& lift) -> void {
        if (gs.n() == 0) return;
        auto lift_set = [&](const Bitset& s) {
            Bitset b(g.n());
            for (int v : s) b.set(lift[v]);
            return b;
        };
        if (components(hc).size() == 1) {
            int idx = detail::find_iso_index(res.patterns, 0, res.h_pattern_count, hc);
            out.classes.push_back({lift_set(Bitset::full(gs.n())), Certificate::avoids(idx)});
            return;
        }
        if (anticomponents(jc).size() == 1) {
            int idx = detail::find_iso_index(res.patterns, res.h_pattern_count,
                                             res.patterns.size(), jc);
            out.classes.push_back({lift_set(Bitset::full(gs.n())), Certificate::avoids(idx)});
            return;
        }
        TwoGraphsResult level = two_graphs_partition(gs, hc, jc);
        for (const auto& cls : level.partition.classes) {
            if (cls.certificate.kind == Certificate::Kind::Singleton) {
                out.classes.push_back({lift_set(cls.vertices), Certificate::singleton()});
                continue;
            }
            const int p = cls.certificate.pattern;
            auto sub = induced(gs, cls.vertices);
            std::vector<int> sub_lift(sub.vertices.size());
            for (std::size_t i = 0; i < sub.vertices.size(); ++i)
                sub_lift[i] = lift[sub.vertices[i]];
            switch (p) {
                case 0: {  // H1-free; H1 is a single component of the original H
                    int idx = detail::find_iso_index(res.patterns, 0, res.h_pattern_count,
                                                     level.patterns[0]);
                    out.classes.push_back({lift_set(cls.vertices), Certificate::avoids(idx)});
                    break;
                }
                case 2: {  // J1-free; J1 is a single anticomponent of the original J
                    int idx = detail::find_iso_index(res.patterns, res.h_pattern_count,
                                                     res.patterns.size(), level.patterns[2]);
                    out.classes.push_back({lift_set(cls.vertices), Certificate::avoids(idx)});
                    break;
                }
                case 1:  // H2-free: re-partition with (H2, J)
                    self(self, sub.graph, level.patterns[1], jc, out, sub_lift);
                    break;
                case 3:  // J2-free: re-partition with (H, J2)
                    self(self, sub.graph, hc, level.patterns[3], out, sub_lift);
                    break;
                default:
                    throw std::logic_error("driver: unexpected certificate");
            }
        }
    };

    std::vector<int> identity(g.n());
    for (int v = 0; v < g.n(); ++v) identity[v] = v;
    rec(rec, g, h, j, res.partition, identity);
    return res;
}

}  // namespace fpart
