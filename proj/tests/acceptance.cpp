// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <string>

#include "helpers.hpp"

using namespace corank;
namespace tk = corank::testkit;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& desc, bool ok) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, desc.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Exact discounted solve for the multiplicative step: alpha*delta on accepting
// states, expectation over alpha elsewhere. Retries with alpha closer to one
// until the solution is a valid certificate (possible whenever Reach = 1).
MultiplicativeCert passing_mult_cert(const PtsCoalgebra& c, Rat alpha, const Rat& delta) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<StateId> unknown;
        std::vector<std::size_t> index(c.size(), ~std::size_t{0});
        for (StateId x = 0; x < c.size(); ++x)
            if (!c.accepting[x]) {
                index[x] = unknown.size();
                unknown.push_back(x);
            }
        std::vector<std::vector<Rat>> a(unknown.size(), std::vector<Rat>(unknown.size(), Rat(0)));
        std::vector<Rat> b(unknown.size(), Rat(0));
        for (std::size_t i = 0; i < unknown.size(); ++i) {
            a[i][i] = alpha;
            for (const auto& [s, p] : c.next[unknown[i]]) {
                if (c.accepting[s])
                    b[i] += p * alpha * delta;
                else
                    a[i][index[s]] -= p;
            }
        }
        bool ok = true;
        std::vector<Rat> sol;
        try {
            sol = solve_linear(std::move(a), std::move(b));
        } catch (const error&) {
            ok = false;
        }
        if (ok)
            for (const Rat& v : sol) ok = ok && delta <= v;
        if (ok) {
            MultiplicativeCert cert;
            cert.alpha = alpha;
            cert.delta = delta;
            cert.values = ValueTable<ExtRat>::constant(c.size(), ExtRat(alpha * delta));
            for (std::size_t i = 0; i < unknown.size(); ++i)
                cert.values[unknown[i]] = ExtRat(sol[i]);
            return cert;
        }
        alpha = (alpha + Rat(1)) / Rat(2);
    }
    throw error("passing_mult_cert: no valid alpha found");
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;

    ok = ok && game_lfp_reach(th::tpg_game()) == std::set<StateId>{0, 2, 3};
    ok = ok && check_game_ranking(th::tpg_game(), th::ex2_5_cert()).verdict == Verdict::pass;
    ok = ok && check_game_ranking(th::intro_game(), th::intro_cert()).verdict == Verdict::pass;

    ReachVector r = pts_reach_exact(th::ex2_8_pts());
    ok = ok && r.entries == std::vector<Rat>{Rat(1, 2), Rat(1), Rat(1), Rat(0)};

    Report add = check_additive(th::ex2_8_pts(), th::ex2_11_cert());
    ok = ok && add.verdict == Verdict::pass;
    std::vector<Rat> q;
    for (const auto& [s, b] : add.bounds) q.push_back(b);
    ok = ok && q == std::vector<Rat>{Rat(0), Rat(1), Rat(1), Rat(0)};

    PtsCoalgebra nonas = th::rptsnonas_pts();
    DistCert dcert;
    dcert.horizon = 32;
    dcert.values.entries.resize(3);
    TailSpec t0s;
    t0s.geo = TailSpec::Geo{1, Rat(1, 3), Rat(1, 3)};
    t0s.inf_mass = Rat(1, 2);
    dcert.values[0] = t0s;
    dcert.values[1] = TailSpec::dirac_fin(0);
    dcert.values[2] = TailSpec::dirac_inf();
    Report drep = check_distribution_ranking(nonas, dcert);
    ok = ok && drep.verdict == Verdict::pass && drep.bounds[0].second == Rat(1, 2);

    for (Rat g : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(3, 4), Rat(4, 5), Rat(5, 6),
                  Rat(7, 8), Rat(9, 10), Rat(99, 100)})
        ok = ok && solve_discounted(nonas, g)[0] == g / (Rat(3) - g);

    double secs = seconds_since(t0);
    criterion(1, "golden example suite, exact, " + std::to_string(secs) + "s (< 1s)",
              ok && secs < 1.0);
}

void criterion2() {
    bool ok = true;
    PtsCoalgebra c = th::notcorec_pts();
    for (Rat eps : {Rat(1), Rat(1, 2), Rat(3)}) {
        auto step = [&](const ValueTable<ExtRat>& f) { return pts_additive_step(c, eps, f); };
        AdditiveCert b1 = th::notcorec_b1(eps);
        AdditiveCert b2 = th::notcorec_b2(eps);
        ok = ok && step(b1.values) == b1.values;
        ok = ok && step(b2.values) == b2.values;
        ok = ok && !(b1.values == b2.values);
    }
    criterion(2, "non-corecursiveness witness: two exact fixed points for eps in {1, 1/2, 3}", ok);
}

void criterion3() {
    bool ok = true;
    for (std::uint64_t n = 1; n <= 10; ++n) {
        GameCoalgebra c = incompleteness_chain(n);
        StateId xn = static_cast<StateId>(n);
        ok = ok && game_lfp_reach(c).count(xn) == 1;
        RankCertificate at_n = synthesize_game_rank(c, OrdinalValue::fin(n));
        ok = ok && at_n.values[xn] == OrdinalValue::fin(n);  // q = 0 at the cap
        RankCertificate at_n1 = synthesize_game_rank(c, OrdinalValue::fin(n + 1));
        ok = ok && at_n1.values[xn] == OrdinalValue::fin(n) && at_n1.values[xn] < at_n1.cap;
    }
    criterion(3, "incompleteness family n = 1..10: reachable yet q = 0 at cap n, q = 1 at n+1",
              ok);
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t violations = 0, certs_checked = 0;

    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed;
        GameCoalgebra c = tk::random_game(spec);
        auto reach = game_lfp_reach(c);
        OrdinalValue cap = seed % 2 ? OrdinalValue::omega_v() : OrdinalValue::fin(1 + seed % 6);
        auto step = [&](const ValueTable<OrdinalValue>& f) { return game_rank_step(c, cap, f); };
        auto certs = th::kleene_prefixes(
            step, ValueTable<OrdinalValue>::constant(c.size(), cap), c.size() + 2);
        certs.push_back(synthesize_game_rank(c, cap).values);
        for (const auto& values : certs) {
            RankCertificate cert{cap, values};
            if (check_game_ranking(c, cert).verdict != Verdict::pass) {
                ++violations;
                continue;
            }
            ++certs_checked;
            for (StateId x = 0; x < c.size(); ++x)
                if (cert.values[x] < cap && reach.count(x) == 0) ++violations;
        }
    }

    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 10000;
        PtsCoalgebra c = tk::random_pts(spec);
        ReachVector reach = pts_reach_exact(c);

        Rat eps(1, 2);
        auto astep = [&](const ValueTable<ExtRat>& f) { return pts_additive_step(c, eps, f); };
        for (const auto& values : th::kleene_prefixes(
                 astep, ValueTable<ExtRat>::constant(c.size(), ExtRat::infinity()),
                 c.size() + 2)) {
            AdditiveCert cert{eps, values};
            if (check_additive(c, cert).verdict != Verdict::pass) {
                ++violations;
                continue;
            }
            ++certs_checked;
            for (StateId x = 0; x < c.size(); ++x)
                if (!values[x].is_infinite() && !(reach[x] == Rat(1))) ++violations;
        }

        auto dstep = [&](const ValueTable<TailSpec>& f) { return pts_dist_step(c, f); };
        for (const auto& values : th::kleene_prefixes(
                 dstep, ValueTable<TailSpec>::constant(c.size(), TailSpec::dirac_inf()),
                 c.size() + 1)) {
            DistCert cert{values, 8};
            if (!check_distribution_ranking(c, cert).passed()) {
                ++violations;
                continue;
            }
            ++certs_checked;
            for (StateId x = 0; x < c.size(); ++x)
                if (reach[x] < values[x].q_value()) ++violations;
        }

        Rat g(9, 10);
        auto ncstep = [&](const ReachVector& f) { return pts_discount_step(c, g, f); };
        auto nccerts =
            th::kleene_prefixes(ncstep, ReachVector::constant(c.size(), Rat(0)), 5);
        nccerts.push_back(solve_discounted(c, g));
        for (const auto& values : nccerts) {
            NonCountingCert cert{g, values};
            if (check_noncounting(c, cert).verdict != Verdict::pass) {
                ++violations;
                continue;
            }
            ++certs_checked;
            for (StateId x = 0; x < c.size(); ++x)
                if (reach[x] < values[x]) ++violations;
        }

        Rat alpha(4, 5), delta(1);
        auto mstep = [&](const ValueTable<ExtRat>& f) { return pts_mult_step(c, alpha, delta, f); };
        for (const auto& values : th::kleene_prefixes(
                 mstep, ValueTable<ExtRat>::constant(c.size(), ExtRat::infinity()),
                 c.size() + 2)) {
            MultiplicativeCert cert{alpha, delta, values};
            if (check_multiplicative(c, cert).verdict != Verdict::pass) continue;
            ++certs_checked;
            for (StateId x = 0; x < c.size(); ++x)
                if (!values[x].is_infinite() && !(reach[x] == Rat(1))) ++violations;
        }
    }

    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 20000;
        TreeAutomaton a = tk::random_tree_automaton(spec);
        auto reach = tree_lfp_reach(a);
        TreeCert synth = synthesize_tree_rank(a);
        TreeArena arena = synth.arena;
        auto step = [&](const ValueTable<TreeOrBottom>& f) { return tree_rank_step(a, arena, f); };
        auto certs = th::kleene_prefixes(
            step, ValueTable<TreeOrBottom>::constant(a.size(), std::nullopt), a.size() + 2);
        certs.push_back(synth.values);
        for (const auto& values : certs) {
            TreeCert cert;
            cert.arena = arena;
            cert.values = values;
            if (check_tree_ranking(a, cert).verdict != Verdict::pass) {
                ++violations;
                continue;
            }
            ++certs_checked;
            for (StateId x = 0; x < a.size(); ++x)
                if (values[x].has_value() && reach.count(x) == 0) ++violations;
        }
    }

    double secs = seconds_since(t0);
    criterion(4,
              "soundness: " + std::to_string(certs_checked) + " passing certificates over 1500 "
              "instances, " + std::to_string(violations) + " violations, " +
              std::to_string(secs) + "s (< 60s)",
              violations == 0 && certs_checked > 1500 && secs < 60.0);
}

void criterion5() {
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 30000;
        PtsCoalgebra c = tk::random_pts(spec);
        ReachVector reach = pts_reach_exact(c);
        DistCert cert = synthesize_hitting_distribution(c, 24);
        for (StateId x = 0; x < c.size(); ++x)
            ok = ok && cert.values[x].q_value() == reach[x];
    }
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 40000;
        TreeAutomaton a = tk::random_tree_automaton(spec);
        auto reach = tree_lfp_reach(a);
        TreeCert cert = synthesize_tree_rank(a);
        for (StateId x = 0; x < a.size(); ++x)
            ok = ok && cert.values[x].has_value() == (reach.count(x) == 1);
    }
    criterion(5, "completeness: synthesized bounds equal the lfp on 200+200 random instances",
              ok);
}

void criterion6() {
    bool ok = true;
    const Rat tol(1, 1000000000);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 50000;
        PtsCoalgebra c = tk::random_pts_reach_one(spec);
        ValueTable<ExtRat> hit = expected_hitting_time(c);
        Rat eps(2, 3);
        std::vector<ValueTable<ExtRat>> certs;
        // epsilon * E itself, a shifted copy, a scaled copy, and kleene prefixes
        ValueTable<ExtRat> base = ValueTable<ExtRat>::constant(c.size(), ExtRat(Rat(0)));
        for (StateId x = 0; x < c.size(); ++x) base[x] = eps * hit[x];
        certs.push_back(base);
        ValueTable<ExtRat> shifted = base;
        for (auto& v : shifted.entries) v = v + ExtRat(Rat(3, 7));
        certs.push_back(shifted);
        ValueTable<ExtRat> scaled = base;
        for (auto& v : scaled.entries) v = Rat(5, 2) * v;
        certs.push_back(scaled);
        auto astep = [&](const ValueTable<ExtRat>& f) { return pts_additive_step(c, eps, f); };
        for (auto& values : th::kleene_prefixes(
                 astep, ValueTable<ExtRat>::constant(c.size(), ExtRat::infinity()),
                 c.size() + 2))
            certs.push_back(values);
        for (const auto& values : certs) {
            AdditiveCert cert{eps, values};
            if (check_additive(c, cert).verdict != Verdict::pass) {
                ok = false;
                continue;
            }
            ok = ok && verify_additive_dominates(c, cert).verdict == Verdict::pass;
        }
    }

    // multiplicative -> additive conversion on the two-fixed-point system ...
    {
        PtsCoalgebra c = th::notcorec_pts();
        MultiplicativeCert cert = th::notcorec_mult_b1(Rat(3, 4), Rat(1));
        AdditiveCert conv = convert_multiplicative(c, cert, Rat(1));
        ok = ok && additive_violations(c, conv, tol).empty();
    }
    // ... and on 50 random instances
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 60000;
        PtsCoalgebra c = tk::random_pts_reach_one(spec);
        MultiplicativeCert cert = passing_mult_cert(c, Rat(7, 10), Rat(2));
        if (check_multiplicative(c, cert).verdict != Verdict::pass) {
            ok = false;
            continue;
        }
        AdditiveCert conv = convert_multiplicative(c, cert, Rat(1, 2));
        ok = ok && additive_violations(c, conv, tol).empty();
    }
    criterion(6, "conversion lemmas: eps*E dominated on 100 instances; mult->add within 1e-9 "
                 "on example + 50 instances",
              ok);
}

void criterion7() {
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 70000;
        GameCoalgebra c = tk::random_game(spec);
        ok = ok && game_lfp_reach(c) == tk::brute_force_game_reach(c, c.size());
    }
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 80000;
        TreeAutomaton a = tk::random_tree_automaton(spec);
        auto reach = tree_lfp_reach(a);
        auto flags = tk::enumerate_tree_paths(a, a.size() + 1);
        for (StateId x = 0; x < a.size(); ++x) ok = ok && flags[x] == (reach.count(x) == 0);
    }
    // Monte Carlo at 1e5 trials within 4 standard errors of the exact value.
    std::size_t mc_checked = 0;
    auto mc_agree = [&](const PtsCoalgebra& c, StateId x, std::uint64_t seed) {
        ReachVector exact = pts_reach_exact(c);
        auto res = tk::monte_carlo_reach(c, x, 100000, 200, seed);
        double bound = 4.0 * res.std_error + 1e-9;
        ++mc_checked;
        return std::abs(res.estimate - exact[x].to_double()) <= bound;
    };
    ok = ok && mc_agree(th::ex2_8_pts(), 0, 42);
    ok = ok && mc_agree(th::rptsnonas_pts(), 0, 43);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        tk::RandomInstanceSpec spec;
        spec.seed = seed + 90000;
        PtsCoalgebra c = tk::random_pts(spec);
        ok = ok && mc_agree(c, static_cast<StateId>(seed % c.size()), 1000 + seed);
    }
    criterion(7, "oracle equivalence: 300+300 graph instances and " +
                     std::to_string(mc_checked) + " monte carlo checks at 1e5 trials",
              ok);
}

void criterion8() {
    bool ok = true;
    std::vector<Rat> schedule;
    for (unsigned k = 1; k <= 20; ++k) schedule.push_back(Rat(1) - Rat(BigInt{1}, BigInt{1} << k));
    const Rat tol(BigInt{1}, BigInt{1} << 16);

    PtsCoalgebra nonas = th::rptsnonas_pts();
    SweepResult s1 = gamma_sweep(nonas, schedule);
    Rat gap1 = pts_reach_exact(nonas)[0] - s1.supremum[0];
    ok = ok && !gap1.is_negative() && gap1 <= tol;

    PtsCoalgebra fam = th::rankdom2_pts(4);
    SweepResult s2 = gamma_sweep(fam, schedule);
    Rat gap2 = pts_reach_exact(fam)[0] - s2.supremum[0];
    ok = ok && !gap2.is_negative() && gap2 <= tol;

    criterion(8, "gamma sweep at 1-2^-20 within 2^-16 of the exact reach values", ok);
}

}  // namespace

int main() {
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
    } catch (const std::exception& e) {
        std::printf("[FAIL] unexpected exception: %s\n", e.what());
        return 1;
    }
    std::printf("%s\n", g_failures == 0 ? "all criteria passed" : "criteria failed");
    return g_failures == 0 ? 0 : 1;
}
