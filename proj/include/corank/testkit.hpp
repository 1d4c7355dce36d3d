#ifndef CORANK_TESTKIT_HPP
#define CORANK_TESTKIT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "corank/game.hpp"
#include "corank/pts.hpp"
#include "corank/tree.hpp"

// Independent oracles and seeded instance generators. Nothing here shares a
// solver code path with the modules it checks: game reachability is decided
// by bounded play enumeration, probabilistic reachability by simulation, and
// tree reachability by path enumeration.

namespace corank::testkit {

// splitmix64; all randomness in the suite derives from an explicit seed.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // value in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
};

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 rng{seed ^ (stream * 0xd6e8feb86659fd93ull)};
    rng.next();
    return rng.next();
}

struct RandomInstanceSpec {
    enum class Kind { game, pts, tree } kind = Kind::game;
    std::size_t min_states = 2;
    std::size_t max_states = 8;
    std::size_t max_branching = 3;
    std::uint64_t accept_density_num = 1;  // probability num/den per state
    std::uint64_t accept_density_den = 4;
    std::uint64_t seed = 0;

    void validate() const {
        if (min_states < 1 || max_states < min_states)
            throw error("instance spec: bad state-count bounds");
        if (max_branching < 1) throw error("instance spec: bad branching bound");
        if (accept_density_den == 0 || accept_density_num > accept_density_den)
            throw error("instance spec: density must be in [0,1]");
    }
};

inline GameCoalgebra random_game(const RandomInstanceSpec& spec) {
    spec.validate();
    SplitMix64 rng{derive_seed(spec.seed, 1)};
    std::size_t n = spec.min_states + rng.below(spec.max_states - spec.min_states + 1);
    GameCoalgebra c;
    for (std::size_t i = 0; i < n; ++i) c.state_names.push_back("s" + std::to_string(i));
    c.accepting.resize(n);
    c.options.resize(n);
    for (StateId x = 0; x < n; ++x) {
        c.accepting[x] = rng.chance(spec.accept_density_num, spec.accept_density_den);
        std::size_t opts = rng.below(spec.max_branching + 1);
        for (std::size_t o = 0; o < opts; ++o) {
            std::vector<StateId> inner;
            std::size_t members = rng.below(spec.max_branching + 1);
            for (std::size_t m = 0; m < members; ++m)
                inner.push_back(static_cast<StateId>(rng.below(n)));
            c.options[x].push_back(std::move(inner));
        }
    }
    c.normalize();
    return c;
}

inline PtsCoalgebra random_pts(const RandomInstanceSpec& spec) {
    spec.validate();
    SplitMix64 rng{derive_seed(spec.seed, 2)};
    std::size_t n = spec.min_states + rng.below(spec.max_states - spec.min_states + 1);
    PtsCoalgebra c;
    for (std::size_t i = 0; i < n; ++i) c.state_names.push_back("s" + std::to_string(i));
    c.accepting.resize(n);
    c.next.resize(n);
    bool any_accepting = false;
    for (StateId x = 0; x < n; ++x) {
        c.accepting[x] = rng.chance(spec.accept_density_num, spec.accept_density_den);
        any_accepting = any_accepting || c.accepting[x];
    }
    if (!any_accepting) c.accepting[rng.below(n)] = true;
    for (StateId x = 0; x < n; ++x) {
        std::size_t succ = 1 + rng.below(std::min(spec.max_branching, n));
        std::set<StateId> targets;
        while (targets.size() < succ) targets.insert(static_cast<StateId>(rng.below(n)));
        std::vector<std::uint64_t> weights;
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            weights.push_back(1 + rng.below(8));
            total += weights.back();
        }
        std::size_t i = 0;
        for (StateId t : targets)
            c.next[x].emplace_back(t, Rat(static_cast<std::int64_t>(weights[i++]),
                                          static_cast<std::int64_t>(total)));
    }
    return c;
}

// Random PTS in which every state reaches the accepting set almost surely:
// state 0 is accepting and every other state keeps an edge to a lower index.
inline PtsCoalgebra random_pts_reach_one(const RandomInstanceSpec& spec) {
    spec.validate();
    SplitMix64 rng{derive_seed(spec.seed, 3)};
    std::size_t n = spec.min_states + rng.below(spec.max_states - spec.min_states + 1);
    PtsCoalgebra c;
    for (std::size_t i = 0; i < n; ++i) c.state_names.push_back("s" + std::to_string(i));
    c.accepting.assign(n, false);
    c.accepting[0] = true;
    c.next.resize(n);
    c.next[0] = {{0, Rat(1)}};
    for (StateId x = 1; x < n; ++x) {
        std::set<StateId> targets;
        targets.insert(static_cast<StateId>(rng.below(x)));  // guarantees a path down to 0
        std::size_t extra = rng.below(spec.max_branching);
        for (std::size_t i = 0; i < extra; ++i) targets.insert(static_cast<StateId>(rng.below(n)));
        std::vector<std::uint64_t> weights;
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            weights.push_back(1 + rng.below(8));
            total += weights.back();
        }
        std::size_t i = 0;
        for (StateId t : targets)
            c.next[x].emplace_back(t, Rat(static_cast<std::int64_t>(weights[i++]),
                                          static_cast<std::int64_t>(total)));
    }
    return c;
}

inline TreeAutomaton random_tree_automaton(const RandomInstanceSpec& spec) {
    spec.validate();
    SplitMix64 rng{derive_seed(spec.seed, 4)};
    std::size_t n = spec.min_states + rng.below(spec.max_states - spec.min_states + 1);
    TreeAutomaton a;
    for (std::size_t i = 0; i < n; ++i) a.state_names.push_back("s" + std::to_string(i));
    for (std::uint64_t ar = 0; ar <= spec.max_branching; ++ar)
        a.symbols.emplace_back("f" + std::to_string(ar), ar);
    a.accepting.resize(n);
    a.trans.resize(n);
    for (StateId x = 0; x < n; ++x) {
        a.accepting[x] = rng.chance(spec.accept_density_num, spec.accept_density_den);
        std::size_t sym = rng.below(a.symbols.size());
        a.trans[x].symbol = sym;
        for (std::uint64_t i = 0; i < a.symbols[sym].second; ++i)
            a.trans[x].children.push_back(static_cast<StateId>(rng.below(n)));
    }
    return a;
}

inline GameStructure random_game_structure(const RandomInstanceSpec& spec) {
    spec.validate();
    SplitMix64 rng{derive_seed(spec.seed, 5)};
    GameStructure g;
    g.max_states = spec.min_states + rng.below(spec.max_states - spec.min_states + 1);
    g.min_states = 1 + rng.below(spec.max_states);
    g.max_moves.resize(g.max_states);
    g.min_moves.resize(g.min_states);
    g.accepting.resize(g.max_states);
    for (std::size_t x = 0; x < g.max_states; ++x) {
        g.accepting[x] = rng.chance(spec.accept_density_num, spec.accept_density_den);
        std::size_t moves = rng.below(spec.max_branching + 1);
        for (std::size_t i = 0; i < moves; ++i) g.max_moves[x].push_back(rng.below(g.min_states));
    }
    for (std::size_t y = 0; y < g.min_states; ++y) {
        std::size_t moves = rng.below(spec.max_branching + 1);
        for (std::size_t i = 0; i < moves; ++i)
            g.min_moves[y].push_back(static_cast<StateId>(rng.below(g.max_states)));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

// Reachability decided by enumerating plays up to a depth bound: max wins
// within d steps iff the state is accepting, the demon is stuck, or some
// option forces a win within d-1 from every demonic answer.
inline std::set<StateId> brute_force_game_reach(const GameCoalgebra& c, std::size_t depth) {
    c.validate();
    if (depth < c.size()) throw error("brute_force_game_reach: depth must be >= |X|");
    std::vector<std::vector<std::int8_t>> memo(c.size(), std::vector<std::int8_t>(depth + 1, -1));
    auto win = [&](auto&& self, StateId x, std::size_t d) -> bool {
        if (c.accepting[x]) return true;
        if (d == 0) return false;
        std::int8_t& m = memo[x][d];
        if (m >= 0) return m != 0;
        bool res = false;
        for (const auto& inner : c.options[x]) {
            bool all = true;
            for (StateId s : inner) all = all && self(self, s, d - 1);
            if (all) {
                res = true;
                break;
            }
        }
        m = res ? 1 : 0;
        return res;
    };
    std::set<StateId> reach;
    for (StateId x = 0; x < c.size(); ++x)
        if (win(win, x, depth)) reach.insert(x);
    return reach;
}

struct MonteCarloResult {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double std_error = 0.0;
};

// Bounded-horizon simulation with a per-state cumulative threshold table;
// trials run in fixed-size batches with derived seeds so the merged count is
// independent of execution order.
inline MonteCarloResult monte_carlo_reach(const PtsCoalgebra& c, StateId start,
                                          std::uint64_t trials, std::uint64_t max_steps,
                                          std::uint64_t seed) {
    c.validate();
    if (trials < 1) throw error("monte_carlo_reach: trials must be >= 1");
    if (start >= c.size()) throw error("monte_carlo_reach: unknown start state");

    std::vector<std::vector<std::uint64_t>> thresholds(c.size());
    for (StateId x = 0; x < c.size(); ++x) {
        Rat cum;
        for (const auto& [s, p] : c.next[x]) {
            cum += p;
            BigInt scaled = (cum.num() << 64) / cum.den();
            thresholds[x].push_back(scaled.fits_u64() ? scaled.to_u64() : ~0ull);
        }
    }

    constexpr std::uint64_t batch_size = 4096;
    std::uint64_t hits = 0;
    std::uint64_t done = 0;
    for (std::uint64_t batch = 0; done < trials; ++batch) {
        SplitMix64 rng{derive_seed(seed, 100 + batch)};
        std::uint64_t in_batch = std::min(batch_size, trials - done);
        for (std::uint64_t t = 0; t < in_batch; ++t) {
            StateId cur = start;
            for (std::uint64_t step = 0; step <= max_steps; ++step) {
                if (c.accepting[cur]) {
                    ++hits;
                    break;
                }
                if (step == max_steps) break;
                std::uint64_t u = rng.next();
                const auto& th = thresholds[cur];
                std::size_t pick = th.size() - 1;
                for (std::size_t i = 0; i < th.size(); ++i)
                    if (u < th[i]) {
                        pick = i;
                        break;
                    }
                cur = c.next[cur][pick].first;
            }
        }
        done += in_batch;
    }
    MonteCarloResult res;
    res.hits = hits;
    res.trials = trials;
    res.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    res.std_error = std::sqrt(res.estimate * (1.0 - res.estimate) / static_cast<double>(trials));
    return res;
}

// Per-state flag: an all-non-accepting path with `depth` edges exists. At
// depth |X|+1 this is exactly the complement of tree_lfp_reach (pigeonhole on
// non-accepting cycles).
inline std::vector<bool> enumerate_tree_paths(const TreeAutomaton& a, std::size_t depth) {
    a.validate();
    if (depth < a.size() + 1) throw error("enumerate_tree_paths: depth must be >= |X|+1");
    std::vector<bool> f(a.size());
    for (StateId x = 0; x < a.size(); ++x) f[x] = !a.accepting[x];
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<bool> nf(a.size(), false);
        for (StateId x = 0; x < a.size(); ++x) {
            if (a.accepting[x]) continue;
            for (StateId s : a.trans[x].children)
                if (f[s]) {
                    nf[x] = true;
                    break;
                }
        }
        f = std::move(nf);
    }
    return f;
}

}  // namespace corank::testkit

#endif
