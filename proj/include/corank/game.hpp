#ifndef CORANK_GAME_HPP
#define CORANK_GAME_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corank/fixpoint.hpp"
#include "corank/ordinal.hpp"
#include "corank/report.hpp"

// Two-player reachability games as coalgebras X -> P(P(X)) x {0,1}: each
// state carries a set of options (the angelic player's choice) whose members
// are the demonic player's possible answers, plus an accepting bit.

namespace corank {

struct GameCoalgebra {
    std::vector<std::string> state_names;
    // options[x] = set of inner sets; inner sets sorted, both levels deduplicated.
    std::vector<std::vector<std::vector<StateId>>> options;
    std::vector<bool> accepting;

    friend bool operator==(const GameCoalgebra&, const GameCoalgebra&) = default;

    std::size_t size() const { return state_names.size(); }

    void normalize() {
        for (auto& opts : options) {
            for (auto& inner : opts) {
                std::sort(inner.begin(), inner.end());
                inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
            }
            std::sort(opts.begin(), opts.end());
            opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
        }
    }

    void validate() const {
        if (options.size() != size() || accepting.size() != size())
            throw error("game: per-state tables must cover all states");
        for (const auto& opts : options)
            for (const auto& inner : opts)
                for (StateId s : inner)
                    if (s >= size()) throw error("game: undeclared state in option set");
    }
};

struct RankCertificate {
    OrdinalValue cap;
    ValueTable<OrdinalValue> values;

    void validate(const GameCoalgebra& c) const {
        if (values.size() != c.size()) throw error("rank certificate: state coverage mismatch");
        for (const auto& v : values.entries)
            if (cap < v) throw error("rank certificate: value above cap");
    }
};

// Positional strategy: per state, the index of the chosen option set.
struct Strategy {
    std::map<StateId, std::size_t> choice;
};

// sigma_g on {0,1}: accepting, or some option all of whose members are good.
// An empty option set loses (max stuck); an empty inner set wins (min stuck).
inline ValueTable<std::uint8_t> game_sigma_step(const GameCoalgebra& c,
                                                const ValueTable<std::uint8_t>& f) {
    ValueTable<std::uint8_t> out = ValueTable<std::uint8_t>::constant(c.size(), 0);
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) {
            out[x] = 1;
            continue;
        }
        for (const auto& inner : c.options[x]) {
            bool all = true;
            for (StateId s : inner) all = all && f[s] != 0;
            if (all) {
                out[x] = 1;
                break;
            }
        }
    }
    return out;
}

// r_{g,z}: 0 when accepting, else min over options of sup over members of the
// truncated successor. Empty option set gives the cap; empty inner set gives 0.
inline ValueTable<OrdinalValue> game_rank_step(const GameCoalgebra& c, const OrdinalValue& cap,
                                               const ValueTable<OrdinalValue>& f) {
    ValueTable<OrdinalValue> out = ValueTable<OrdinalValue>::constant(c.size(), cap);
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) {
            out[x] = OrdinalValue::fin(0);
            continue;
        }
        OrdinalValue best = cap;
        for (const auto& inner : c.options[x]) {
            OrdinalValue sup = OrdinalValue::fin(0);
            for (StateId s : inner) sup = ord_max(sup, trunc_succ(f[s], cap));
            best = ord_min(best, sup);
        }
        out[x] = best;
    }
    return out;
}

inline std::set<StateId> game_lfp_reach(const GameCoalgebra& c) {
    c.validate();
    auto step = [&](const ValueTable<std::uint8_t>& f) { return game_sigma_step(c, f); };
    IterationConfig cfg{c.size() + 2};
    auto res = kleene_lfp(step, ValueTable<std::uint8_t>::constant(c.size(), 0), cfg);
    if (!res.stabilized) throw error("game reach iteration failed to stabilize");
    std::set<StateId> reach;
    for (StateId x = 0; x < c.size(); ++x)
        if (res.table[x] != 0) reach.insert(x);
    return reach;
}

inline Report check_game_ranking(const GameCoalgebra& c, const RankCertificate& cert) {
    c.validate();
    cert.validate(c);
    auto step = [&](const ValueTable<OrdinalValue>& f) { return game_rank_step(c, cert.cap, f); };
    auto violations = check_postfixed(step, cert.values, ord_rank_leq);
    Report rep;
    rep.verdict = violations.empty() ? Verdict::pass : Verdict::fail;
    for (const auto& v : violations)
        rep.violations.push_back({c.state_names[v.state], v.step_value.to_string(),
                                  v.candidate.to_string()});
    for (StateId x = 0; x < c.size(); ++x)
        rep.bounds.emplace_back(c.state_names[x], Rat(cert.values[x] < cert.cap ? 1 : 0));
    return rep;
}

// The optimal ranking arrow: the unique fixed point of the rank step. Computed
// by backward attractor induction (bucket queue over rank values); Kleene
// iteration gives the same table, which is kept as a test.
inline RankCertificate synthesize_game_rank(const GameCoalgebra& c, const OrdinalValue& cap) {
    c.validate();
    const std::size_t n = c.size();
    constexpr std::uint64_t UNSET = ~0ull;
    std::vector<std::uint64_t> rank(n, UNSET);

    // Option bookkeeping: remaining unresolved members per (state, option).
    std::vector<std::vector<std::size_t>> pending(n);
    std::vector<std::vector<std::pair<StateId, std::size_t>>> watchers(n);
    std::vector<std::vector<StateId>> buckets(n + 2);
    auto settle = [&](StateId x, std::uint64_t r) {
        if (rank[x] != UNSET) return;
        rank[x] = r;
        buckets[std::min<std::uint64_t>(r, n + 1)].push_back(x);
    };
    for (StateId x = 0; x < n; ++x) {
        pending[x].resize(c.options[x].size());
        if (c.accepting[x]) {
            settle(x, 0);
            continue;
        }
        for (std::size_t oi = 0; oi < c.options[x].size(); ++oi) {
            const auto& inner = c.options[x][oi];
            pending[x][oi] = inner.size();
            if (inner.empty()) settle(x, 0);  // min stuck
            for (StateId s : inner) watchers[s].push_back({x, oi});
        }
    }
    for (std::uint64_t r = 0; r <= n; ++r) {
        for (std::size_t bi = 0; bi < buckets[r].size(); ++bi) {
            StateId y = buckets[r][bi];
            for (auto [x, oi] : watchers[y]) {
                if (rank[x] != UNSET || c.accepting[x]) continue;
                if (--pending[x][oi] == 0) settle(x, r + 1);  // y is the sup of this option
            }
        }
    }

    RankCertificate cert;
    cert.cap = cap;
    cert.values.entries.resize(n);
    for (StateId x = 0; x < n; ++x) {
        OrdinalValue v = rank[x] == UNSET ? OrdinalValue::omega_v() : OrdinalValue::fin(rank[x]);
        cert.values[x] = ord_min(v, cap);
    }
    return cert;
}

// arg min over options of sup over members of cert(s) + 1, per state with a
// certified finite value. Ties break toward the lowest option index.
inline Strategy extract_strategy(const GameCoalgebra& c, const RankCertificate& cert) {
    Report rep = check_game_ranking(c, cert);
    if (!rep.passed()) throw error("extract_strategy: certificate does not pass");
    Strategy st;
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x] || !(cert.values[x] < cert.cap) || c.options[x].empty()) continue;
        std::size_t best_idx = 0;
        std::optional<OrdinalValue> best;
        for (std::size_t oi = 0; oi < c.options[x].size(); ++oi) {
            OrdinalValue sup = OrdinalValue::fin(0);
            for (StateId s : c.options[x][oi]) sup = ord_max(sup, trunc_succ(cert.values[s], cert.cap));
            if (!best || sup < *best) {
                best = sup;
                best_idx = oi;
            }
        }
        st.choice[x] = best_idx;
    }
    return st;
}

// Exhaustive play check: following the strategy from x, every demonic answer
// reaches an accepting state (or strands the demon) within `fuel` steps.
inline bool strategy_forces_reach(const GameCoalgebra& c, const Strategy& st, StateId x,
                                  std::uint64_t fuel) {
    if (c.accepting[x]) return true;
    auto it = st.choice.find(x);
    if (it == st.choice.end()) return false;
    const auto& inner = c.options[x][it->second];
    if (inner.empty()) return true;  // min stuck
    if (fuel == 0) return false;
    for (StateId s : inner)
        if (!strategy_forces_reach(c, st, s, fuel - 1)) return false;
    return true;
}

// Example 3.17 truncated to indices 0..n: x0 accepting with no options, and
// x_a's single option lets the demon pick any lower-indexed state.
inline GameCoalgebra incompleteness_chain(std::uint64_t n) {
    if (n < 1) throw error("incompleteness_chain: n must be >= 1");
    GameCoalgebra c;
    for (std::uint64_t a = 0; a <= n; ++a) c.state_names.push_back("x" + std::to_string(a));
    c.accepting.assign(n + 1, false);
    c.accepting[0] = true;
    c.options.resize(n + 1);
    for (std::uint64_t a = 1; a <= n; ++a) {
        std::vector<StateId> below;
        for (std::uint64_t b = 0; b < a; ++b) below.push_back(static_cast<StateId>(b));
        c.options[a] = {below};
    }
    return c;
}

// Explicit bipartite game structure; the import into coalgebra form forgets
// min-state identities (they are inessential for the reaching set).
struct GameStructure {
    std::size_t max_states = 0;
    std::size_t min_states = 0;
    std::vector<std::vector<std::size_t>> max_moves;  // max state -> min states
    std::vector<std::vector<StateId>> min_moves;      // min state -> max states
    std::vector<bool> accepting;                      // over max states
};

inline GameCoalgebra from_game_structure(const GameStructure& g) {
    GameCoalgebra c;
    for (std::size_t x = 0; x < g.max_states; ++x) c.state_names.push_back("x" + std::to_string(x));
    c.accepting = g.accepting;
    c.options.resize(g.max_states);
    for (std::size_t x = 0; x < g.max_states; ++x)
        for (std::size_t y : g.max_moves[x]) c.options[x].push_back(g.min_moves[y]);
    c.normalize();
    return c;
}

inline GameStructure to_game_structure(const GameCoalgebra& c) {
    GameStructure g;
    g.max_states = c.size();
    g.accepting = c.accepting;
    g.max_moves.resize(c.size());
    std::map<std::vector<StateId>, std::size_t> min_index;
    for (StateId x = 0; x < c.size(); ++x) {
        for (const auto& inner : c.options[x]) {
            auto [it, fresh] = min_index.try_emplace(inner, min_index.size());
            if (fresh) g.min_moves.push_back(inner);
            g.max_moves[x].push_back(it->second);
        }
    }
    g.min_states = g.min_moves.size();
    return g;
}

}  // namespace corank

#endif
