#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fpart {

// Malformed input: bad schema, out-of-range vertex, invalid argument.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Work would exceed a configured budget; the caller gets a refusal, never a
// silently truncated answer.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A structural hypothesis failed (e.g. the host graph contains a forbidden
// pattern). When the failure was detected by finding a concrete embedding,
// `witness_map` holds the pattern->host vertex map and `witness_pattern_name`
// names the violated pattern.
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}

    HypothesisError(const std::string& what, std::string pattern_name, int pattern_n,
                    std::vector<std::pair<int, int>> pattern_edges, std::vector<int> witness)
        : std::runtime_error(what),
          witness_pattern_name(std::move(pattern_name)),
          witness_pattern_n(pattern_n),
          witness_pattern_edges(std::move(pattern_edges)),
          witness_map(std::move(witness)) {}

    // The violated pattern as an edge list plus the pattern->host vertex map,
    // so a machine-readable witness can be emitted without extra context.
    std::string witness_pattern_name;
    int witness_pattern_n = 0;
    std::vector<std::pair<int, int>> witness_pattern_edges;
    std::vector<int> witness_map;  // empty when no embedding is attached

    bool has_witness() const { return !witness_map.empty(); }
};

namespace detail {

// Internal invariant check; failures indicate a bug, not bad input.
inline void engine_check(bool cond, const char* msg) {
    if (!cond) throw std::logic_error(std::string("partition engine invariant failed: ") + msg);
}

}  // namespace detail

}  // namespace fpart
