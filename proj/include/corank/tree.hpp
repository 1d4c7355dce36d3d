#ifndef CORANK_TREE_HPP
#define CORANK_TREE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "corank/fixpoint.hpp"
#include "corank/report.hpp"

// Deterministic tree automata as coalgebras X -> Sigma_n x X^n x {0,1} and
// the finite-depth-tree ranking domain: certificates assign each state either
// bottom or a finite unlabeled tree, ordered by reverse prefix extension.

namespace corank {

struct TreeAutomaton {
    std::vector<std::string> state_names;
    std::vector<std::pair<std::string, std::uint64_t>> symbols;  // name, arity
    struct Transition {
        std::size_t symbol = 0;
        std::vector<StateId> children;
        friend bool operator==(const Transition&, const Transition&) = default;
    };
    std::vector<Transition> trans;
    std::vector<bool> accepting;

    friend bool operator==(const TreeAutomaton&, const TreeAutomaton&) = default;

    std::size_t size() const { return state_names.size(); }

    void validate() const {
        if (trans.size() != size() || accepting.size() != size())
            throw error("tree automaton: per-state tables must cover all states");
        for (const auto& t : trans) {
            if (t.symbol >= symbols.size()) throw error("tree automaton: unknown symbol");
            if (t.children.size() != symbols[t.symbol].second)
                throw error("tree automaton: arity mismatch for symbol " +
                            symbols[t.symbol].first);
            for (StateId s : t.children)
                if (s >= size()) throw error("tree automaton: undeclared child state");
        }
    }
};

// Finite-depth unlabeled trees stored as a shared DAG: structurally equal
// subtrees intern to one node identity, so equality is identity.
class TreeArena {
public:
    using NodeId = std::uint32_t;

    NodeId make(std::vector<NodeId> children) {
        for (NodeId ch : children)
            if (ch >= nodes_.size()) throw error("tree arena: unknown child node");
        auto it = intern_.find(children);
        if (it != intern_.end()) return it->second;
        NodeId id = static_cast<NodeId>(nodes_.size());
        nodes_.push_back(children);
        intern_.emplace(std::move(children), id);
        return id;
    }

    NodeId leaf() { return make({}); }

    const std::vector<NodeId>& children(NodeId n) const { return nodes_.at(n); }
    std::size_t node_count() const { return nodes_.size(); }

    // Prefix order: a arises from b by pruning all children of some nodes.
    bool prefix_leq(NodeId a, NodeId b) const {
        std::map<std::pair<NodeId, NodeId>, bool> memo;
        return prefix_leq_rec(a, b, memo);
    }

    NodeId import(const TreeArena& other, NodeId n) {
        std::map<NodeId, NodeId> memo;
        return import_rec(other, n, memo);
    }

    std::uint64_t depth(NodeId n) const {
        std::uint64_t d = 0;
        for (NodeId ch : children(n)) d = std::max(d, depth(ch) + 1);
        return d;
    }

    std::string render(NodeId n) const {
        std::string out = "(";
        const auto& ch = children(n);
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (i != 0) out += ",";
            out += render(ch[i]);
        }
        return out + ")";
    }

private:
    bool prefix_leq_rec(NodeId a, NodeId b, std::map<std::pair<NodeId, NodeId>, bool>& memo) const {
        if (a == b) return true;
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const auto& ca = children(a);
        const auto& cb = children(b);
        bool ok = ca.empty() || (ca.size() == cb.size() && [&] {
                      for (std::size_t i = 0; i < ca.size(); ++i)
                          if (!prefix_leq_rec(ca[i], cb[i], memo)) return false;
                      return true;
                  }());
        memo.emplace(key, ok);
        return ok;
    }

    NodeId import_rec(const TreeArena& other, NodeId n, std::map<NodeId, NodeId>& memo) {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        std::vector<NodeId> ch;
        for (NodeId c : other.children(n)) ch.push_back(import_rec(other, c, memo));
        NodeId id = make(std::move(ch));
        memo.emplace(n, id);
        return id;
    }

    std::vector<std::vector<NodeId>> nodes_;
    std::map<std::vector<NodeId>, NodeId> intern_;
};

// Bottom marks states with no finite-depth witness.
using TreeOrBottom = std::optional<TreeArena::NodeId>;

struct TreeCert {
    TreeArena arena;
    ValueTable<TreeOrBottom> values;

    void validate(const TreeAutomaton& a) const {
        if (values.size() != a.size()) throw error("tree certificate: state coverage mismatch");
    }

    std::string render_value(StateId x) const {
        return values[x] ? arena.render(*values[x]) : "bot";
    }
};

// The rank order: bottom below everything, larger trees below smaller ones.
inline bool tree_rank_leq(const TreeArena& arena, const TreeOrBottom& a, const TreeOrBottom& b) {
    if (!a) return true;
    if (!b) return false;
    return arena.prefix_leq(*b, *a);
}

// sigma_t on {0,1}: accepting, or all children already certified.
inline ValueTable<std::uint8_t> tree_sigma_step(const TreeAutomaton& a,
                                                const ValueTable<std::uint8_t>& f) {
    ValueTable<std::uint8_t> out = ValueTable<std::uint8_t>::constant(a.size(), 0);
    for (StateId x = 0; x < a.size(); ++x) {
        if (a.accepting[x]) {
            out[x] = 1;
            continue;
        }
        bool all = true;
        for (StateId s : a.trans[x].children) all = all && f[s] != 0;
        out[x] = all ? 1 : 0;
    }
    return out;
}

// r_t: a leaf at accepting states, bottom once any child is bottom, and the
// one-level combine otherwise.
inline ValueTable<TreeOrBottom> tree_rank_step(const TreeAutomaton& a, TreeArena& arena,
                                               const ValueTable<TreeOrBottom>& f) {
    ValueTable<TreeOrBottom> out = ValueTable<TreeOrBottom>::constant(a.size(), std::nullopt);
    for (StateId x = 0; x < a.size(); ++x) {
        if (a.accepting[x]) {
            out[x] = arena.leaf();
            continue;
        }
        std::vector<TreeArena::NodeId> ch;
        bool any_bottom = false;
        for (StateId s : a.trans[x].children) {
            if (!f[s]) {
                any_bottom = true;
                break;
            }
            ch.push_back(*f[s]);
        }
        if (!any_bottom) out[x] = arena.make(std::move(ch));
    }
    return out;
}

// States whose unique run tree has no infinite all-non-accepting branch.
inline std::set<StateId> tree_lfp_reach(const TreeAutomaton& a) {
    a.validate();
    auto step = [&](const ValueTable<std::uint8_t>& f) { return tree_sigma_step(a, f); };
    IterationConfig cfg{a.size() + 2};
    auto res = kleene_lfp(step, ValueTable<std::uint8_t>::constant(a.size(), 0), cfg);
    if (!res.stabilized) throw error("tree reach iteration failed to stabilize");
    std::set<StateId> reach;
    for (StateId x = 0; x < a.size(); ++x)
        if (res.table[x] != 0) reach.insert(x);
    return reach;
}

inline Report check_tree_ranking(const TreeAutomaton& a, const TreeCert& cert) {
    a.validate();
    cert.validate(a);
    TreeArena arena = cert.arena;  // combine nodes intern into a local copy
    Report rep;
    for (StateId x = 0; x < a.size(); ++x) {
        if (a.accepting[x] || !cert.values[x]) continue;  // top / bottom: no constraint
        std::vector<TreeArena::NodeId> ch;
        bool any_bottom = false;
        for (StateId s : a.trans[x].children) {
            if (!cert.values[s]) {
                any_bottom = true;
                break;
            }
            ch.push_back(*cert.values[s]);
        }
        if (any_bottom) {
            rep.violations.push_back({a.state_names[x], "bot", cert.render_value(x)});
            continue;
        }
        TreeArena::NodeId combined = arena.make(std::move(ch));
        if (!arena.prefix_leq(combined, *cert.values[x]))
            rep.violations.push_back(
                {a.state_names[x], ">= " + arena.render(combined), cert.render_value(x)});
    }
    rep.verdict = rep.violations.empty() ? Verdict::pass : Verdict::fail;
    for (StateId x = 0; x < a.size(); ++x)
        rep.bounds.emplace_back(a.state_names[x], Rat(cert.values[x] ? 1 : 0));
    return rep;
}

// The optimal tree certificate: bottom outside the reach set, elsewhere the
// memoized unfolding (so at most one arena node per state).
inline TreeCert synthesize_tree_rank(const TreeAutomaton& a) {
    a.validate();
    std::set<StateId> reach = tree_lfp_reach(a);
    TreeCert cert;
    cert.values = ValueTable<TreeOrBottom>::constant(a.size(), std::nullopt);
    std::vector<std::uint8_t> visiting(a.size(), 0);
    auto unfold = [&](auto&& self, StateId x) -> TreeArena::NodeId {
        if (cert.values[x]) return *cert.values[x];
        if (visiting[x]) throw error("synthesize_tree_rank: cycle inside reach set");
        visiting[x] = 1;
        TreeArena::NodeId id;
        if (a.accepting[x]) {
            id = cert.arena.leaf();
        } else {
            std::vector<TreeArena::NodeId> ch;
            for (StateId s : a.trans[x].children) ch.push_back(self(self, s));
            id = cert.arena.make(std::move(ch));
        }
        visiting[x] = 0;
        cert.values[x] = id;
        return id;
    };
    for (StateId x : reach) unfold(unfold, x);
    return cert;
}

}  // namespace corank

#endif
