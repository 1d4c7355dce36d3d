#include <doctest.h>

#include "helpers.hpp"

using namespace corank;

namespace {

// s0 -> s1 -> s2 -> s0 with s2 accepting, plus a branching s3.
TreeAutomaton tree4() {
    TreeAutomaton a;
    a.state_names = {"s0", "s1", "s2", "s3"};
    a.symbols = {{"a", 1}, {"b", 2}};
    a.accepting = {false, false, true, false};
    a.trans = {{0, {1}}, {0, {2}}, {0, {0}}, {1, {0, 1}}};
    return a;
}

TreeAutomaton self_loop(bool accepting) {
    TreeAutomaton a;
    a.state_names = {"s"};
    a.symbols = {{"a", 1}};
    a.accepting = {accepting};
    a.trans = {{0, {0}}};
    return a;
}

TreeAutomaton chain3() {
    TreeAutomaton a;
    a.state_names = {"x", "y", "z"};
    a.symbols = {{"a", 1}, {"end", 1}};
    a.accepting = {false, false, true};
    a.trans = {{0, {1}}, {0, {2}}, {1, {2}}};
    return a;
}

}  // namespace

TEST_CASE("tree reachability") {
    CHECK(tree_lfp_reach(self_loop(true)) == std::set<StateId>{0});
    CHECK(tree_lfp_reach(self_loop(false)) == std::set<StateId>{});
    CHECK(tree_lfp_reach(tree4()) == std::set<StateId>{0, 1, 2, 3});
}

TEST_CASE("tree arena interns structurally equal nodes") {
    TreeArena arena;
    auto leaf1 = arena.leaf();
    auto leaf2 = arena.make({});
    CHECK(leaf1 == leaf2);
    auto t1 = arena.make({leaf1, leaf1});
    auto t2 = arena.make({leaf2, leaf2});
    CHECK(t1 == t2);
    CHECK(arena.render(t1) == "((),())");
    CHECK(arena.node_count() == 2);
}

TEST_CASE("prefix order laws on generated trees") {
    TreeArena arena;
    testkit::SplitMix64 rng{11};
    std::vector<TreeArena::NodeId> pool{arena.leaf()};
    for (int i = 0; i < 60; ++i) {
        std::vector<TreeArena::NodeId> ch;
        std::size_t width = rng.below(3);
        for (std::size_t j = 0; j < width; ++j) ch.push_back(pool[rng.below(pool.size())]);
        pool.push_back(arena.make(std::move(ch)));
    }
    for (int i = 0; i < 300; ++i) {
        auto a = pool[rng.below(pool.size())];
        auto b = pool[rng.below(pool.size())];
        auto c = pool[rng.below(pool.size())];
        CHECK(arena.prefix_leq(a, a));
        if (arena.prefix_leq(a, b) && arena.prefix_leq(b, a)) CHECK(a == b);
        if (arena.prefix_leq(a, b) && arena.prefix_leq(b, c)) CHECK(arena.prefix_leq(a, c));
        // the leaf is a prefix of everything
        CHECK(arena.prefix_leq(pool[0], a));
        // bottom is below everything in the rank order
        CHECK(tree_rank_leq(arena, std::nullopt, TreeOrBottom{a}));
        CHECK(!tree_rank_leq(arena, TreeOrBottom{a}, std::nullopt));
    }
}

TEST_CASE("tree certificate checking") {
    TreeAutomaton a = tree4();
    SUBCASE("the synthesized certificate passes with equality") {
        TreeCert cert = synthesize_tree_rank(a);
        Report rep = check_tree_ranking(a, cert);
        CHECK(rep.verdict == Verdict::pass);
        TreeArena arena = cert.arena;
        auto step = [&](const ValueTable<TreeOrBottom>& f) {
            return tree_rank_step(a, arena, f);
        };
        CHECK(step(cert.values) == cert.values);
    }
    SUBCASE("the all-bottom certificate passes with bound zero") {
        TreeCert cert;
        cert.values = ValueTable<TreeOrBottom>::constant(a.size(), std::nullopt);
        Report rep = check_tree_ranking(a, cert);
        CHECK(rep.verdict == Verdict::pass);
        for (const auto& [s, b] : rep.bounds) CHECK(b == Rat(0));
    }
    SUBCASE("a tree above a bottom child fails") {
        TreeCert cert;
        cert.values = ValueTable<TreeOrBottom>::constant(a.size(), std::nullopt);
        cert.values[0] = cert.arena.leaf();  // s0's child s1 is bottom
        Report rep = check_tree_ranking(a, cert);
        CHECK(rep.verdict == Verdict::fail);
        REQUIRE(rep.violations.size() == 1);
        CHECK(rep.violations[0].state == "s0");
    }
    SUBCASE("a too-small tree at a non-accepting state fails") {
        TreeCert cert = synthesize_tree_rank(a);
        cert.values[3] = cert.arena.leaf();  // must extend combine of two children
        CHECK(check_tree_ranking(a, cert).verdict == Verdict::fail);
    }
    SUBCASE("coverage mismatch is an error") {
        TreeCert cert = synthesize_tree_rank(a);
        cert.values.entries.pop_back();
        CHECK_THROWS_AS(check_tree_ranking(a, cert), error);
    }
}

TEST_CASE("tree synthesis") {
    SUBCASE("an accepting state maps to the leaf") {
        TreeCert cert = synthesize_tree_rank(self_loop(true));
        REQUIRE(cert.values[0].has_value());
        CHECK(cert.arena.render(*cert.values[0]) == "()");
    }
    SUBCASE("a chain to an accepting state gives a depth-two tree") {
        TreeCert cert = synthesize_tree_rank(chain3());
        REQUIRE(cert.values[0].has_value());
        CHECK(cert.arena.depth(*cert.values[0]) == 2);
        CHECK(cert.arena.render(*cert.values[0]) == "((()))");
    }
    SUBCASE("states outside the reach set map to bottom") {
        TreeCert cert = synthesize_tree_rank(self_loop(false));
        CHECK(!cert.values[0].has_value());
    }
    SUBCASE("sharing keeps the arena at most one node per state") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            testkit::RandomInstanceSpec spec;
            spec.seed = seed;
            TreeAutomaton a = testkit::random_tree_automaton(spec);
            TreeCert cert = synthesize_tree_rank(a);
            CHECK(cert.arena.node_count() <= a.size());
        }
    }
}

TEST_CASE("completeness and soundness on random automata") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        testkit::RandomInstanceSpec spec;
        spec.seed = seed + 600;
        spec.max_states = 6;
        TreeAutomaton a = testkit::random_tree_automaton(spec);
        auto reach = tree_lfp_reach(a);
        TreeCert cert = synthesize_tree_rank(a);
        REQUIRE(check_tree_ranking(a, cert).verdict == Verdict::pass);
        for (StateId x = 0; x < a.size(); ++x)
            CHECK(cert.values[x].has_value() == (reach.count(x) == 1));
        // soundness on the kleene prefixes of the rank step
        TreeArena arena = cert.arena;
        auto step = [&](const ValueTable<TreeOrBottom>& f) {
            return tree_rank_step(a, arena, f);
        };
        for (const auto& values :
             th::kleene_prefixes(step,
                                 ValueTable<TreeOrBottom>::constant(a.size(), std::nullopt),
                                 a.size() + 2)) {
            TreeCert c2;
            c2.arena = arena;
            c2.values = values;
            REQUIRE(check_tree_ranking(a, c2).verdict == Verdict::pass);
            for (StateId x = 0; x < a.size(); ++x)
                if (values[x].has_value()) CHECK(reach.count(x) == 1);
        }
    }
}

TEST_CASE("the tree rank step is monotone on random table pairs") {
    testkit::SplitMix64 rng{2718};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        testkit::RandomInstanceSpec spec;
        spec.seed = seed + 900;
        TreeAutomaton a = testkit::random_tree_automaton(spec);
        TreeCert synth = synthesize_tree_rank(a);
        TreeArena arena = synth.arena;
        // Growing every leaf by one level keeps the original as a prefix, so
        // the grown tree sits below it; bottom is below everything.
        auto grow = [&](auto&& self, TreeArena::NodeId n) -> TreeArena::NodeId {
            const auto ch = arena.children(n);
            if (ch.empty()) return arena.make({arena.leaf()});
            std::vector<TreeArena::NodeId> out;
            for (auto c : ch) out.push_back(self(self, c));
            return arena.make(std::move(out));
        };
        ValueTable<TreeOrBottom> f = ValueTable<TreeOrBottom>::constant(a.size(), std::nullopt);
        ValueTable<TreeOrBottom> g = f;
        for (StateId x = 0; x < a.size(); ++x) {
            if (!synth.values[x] || rng.chance(1, 3)) continue;
            g[x] = synth.values[x];
            f[x] = rng.chance(1, 2) ? TreeOrBottom{grow(grow, *synth.values[x])}
                                    : TreeOrBottom{std::nullopt};
            REQUIRE(tree_rank_leq(arena, f[x], g[x]));
        }
        auto sf = tree_rank_step(a, arena, f);
        auto sg = tree_rank_step(a, arena, g);
        for (StateId x = 0; x < a.size(); ++x) CHECK(tree_rank_leq(arena, sf[x], sg[x]));
    }
}

TEST_CASE("kleene reach equals the graph-theoretic complement") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        testkit::RandomInstanceSpec spec;
        spec.seed = seed + 700;
        TreeAutomaton a = testkit::random_tree_automaton(spec);
        auto reach = tree_lfp_reach(a);
        // A state fails iff it can reach a non-accepting cycle through
        // non-accepting states; computed here by DFS on the complement graph.
        std::vector<int> color(a.size(), 0);
        std::vector<bool> bad(a.size(), false);
        auto dfs = [&](auto&& self, StateId x) -> bool {
            if (a.accepting[x]) return false;
            if (color[x] == 1) return true;  // back edge: non-accepting cycle
            if (color[x] == 2) return bad[x];
            color[x] = 1;
            bool b = false;
            for (StateId s : a.trans[x].children) b = b || self(self, s);
            color[x] = 2;
            bad[x] = b;
            return b;
        };
        for (StateId x = 0; x < a.size(); ++x)
            CHECK((reach.count(x) == 1) == !dfs(dfs, x));
    }
}
