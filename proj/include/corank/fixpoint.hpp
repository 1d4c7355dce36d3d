#ifndef CORANK_FIXPOINT_HPP
#define CORANK_FIXPOINT_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "corank/common.hpp"

// Monotone iteration over finite value tables. Each system instance supplies
// its own step map (a table-to-table function) and, where an order is needed,
// a pointwise comparison; the engine only relies on exact table equality for
// stabilization.

namespace corank {

// One value per state of the ambient system, densely indexed by StateId.
template <typename V>
struct ValueTable {
    std::vector<V> entries;

    std::size_t size() const { return entries.size(); }
    const V& operator[](StateId s) const { return entries[s]; }
    V& operator[](StateId s) { return entries[s]; }

    friend bool operator==(const ValueTable& a, const ValueTable& b) {
        return a.entries == b.entries;
    }

    static ValueTable constant(std::size_t n, V v) {
        ValueTable t;
        t.entries.assign(n, std::move(v));
        return t;
    }
};

struct IterationConfig {
    std::size_t max_iterations = 64;
};

template <typename V>
struct IterationResult {
    ValueTable<V> table;
    std::size_t iterations_used = 0;
    bool stabilized = false;
};

// A violation of candidate <= step(candidate) at a single state.
template <typename V>
struct PostfixViolation {
    StateId state;
    V candidate;
    V step_value;
};

// Kleene iteration from a designated bottom table. Stops at the first i with
// step^{i+1}(bottom) == step^i(bottom); iterations_used counts applications
// of the step map. A non-stabilized result signals the caller to raise the
// budget or fall back to a direct solver.
template <typename V, typename Step>
IterationResult<V> kleene_lfp(Step&& step, ValueTable<V> bottom, const IterationConfig& cfg = {}) {
    if (cfg.max_iterations < 1) throw error("max_iterations must be >= 1");
    IterationResult<V> res;
    res.table = std::move(bottom);
    for (std::size_t i = 1; i <= cfg.max_iterations; ++i) {
        ValueTable<V> next = step(res.table);
        res.iterations_used = i;
        if (next == res.table) {
            res.stabilized = true;
            return res;
        }
        res.table = std::move(next);
    }
    return res;
}

// Per-state check of candidate(x) <= step(candidate)(x) in the instance order.
template <typename V, typename Step, typename Leq>
std::vector<PostfixViolation<V>> check_postfixed(Step&& step, const ValueTable<V>& candidate,
                                                 Leq&& leq) {
    ValueTable<V> stepped = step(candidate);
    std::vector<PostfixViolation<V>> out;
    for (StateId x = 0; x < candidate.size(); ++x) {
        if (!leq(candidate[x], stepped[x]))
            out.push_back({x, candidate[x], stepped[x]});
    }
    return out;
}

// Iteration seeded with a post-fixed point instead of bottom; the limit is a
// fixed point dominating the seed (not necessarily the least one).
template <typename V, typename Step, typename Leq>
IterationResult<V> iterate_from_postfix(Step&& step, ValueTable<V> start, Leq&& leq,
                                        const IterationConfig& cfg = {}) {
    if (!check_postfixed(step, start, leq).empty())
        throw error("iterate_from_postfix: seed is not a post-fixed point");
    return kleene_lfp(step, std::move(start), cfg);
}

}  // namespace corank

#endif
