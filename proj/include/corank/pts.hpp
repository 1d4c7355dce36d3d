#ifndef CORANK_PTS_HPP
#define CORANK_PTS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corank/fixpoint.hpp"
#include "corank/highprec.hpp"
#include "corank/linalg.hpp"
#include "corank/rational.hpp"
#include "corank/report.hpp"

// Probabilistic transition systems as coalgebras X -> D(X) x {0,1}, their
// exact reachability semantics, and the four supermartingale certificate
// flavors with their conversions.

namespace corank {

struct PtsCoalgebra {
    std::vector<std::string> state_names;
    std::vector<std::vector<std::pair<StateId, Rat>>> next;
    std::vector<bool> accepting;

    friend bool operator==(const PtsCoalgebra&, const PtsCoalgebra&) = default;

    std::size_t size() const { return state_names.size(); }

    void validate() const {
        if (next.size() != size() || accepting.size() != size())
            throw error("pts: per-state tables must cover all states");
        for (StateId x = 0; x < size(); ++x) {
            Rat sum;
            for (const auto& [s, p] : next[x]) {
                if (s >= size()) throw error("pts: undeclared successor state");
                if (!(Rat(0) < p)) throw error("pts: probabilities must be strictly positive");
                sum += p;
            }
            if (!(sum == Rat(1)))
                throw error("pts: probabilities of " + state_names[x] + " sum to " +
                            sum.to_string() + ", expected 1");
        }
    }
};

using ReachVector = ValueTable<Rat>;

// ---------------------------------------------------------------------------
// Reachability semantics
// ---------------------------------------------------------------------------

// States from which the accepting set is reachable in the support graph.
inline std::vector<bool> support_can_reach_acc(const PtsCoalgebra& c) {
    std::vector<std::vector<StateId>> preds(c.size());
    for (StateId x = 0; x < c.size(); ++x)
        for (const auto& [s, p] : c.next[x]) preds[s].push_back(x);
    std::vector<bool> seen(c.size(), false);
    std::vector<StateId> stack;
    for (StateId x = 0; x < c.size(); ++x)
        if (c.accepting[x]) {
            seen[x] = true;
            stack.push_back(x);
        }
    while (!stack.empty()) {
        StateId cur = stack.back();
        stack.pop_back();
        for (StateId p : preds[cur])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

// Least solution of the reachability equations: states that cannot reach the
// accepting set are pinned to 0 first, the rest is an exact linear solve.
inline ReachVector pts_reach_exact(const PtsCoalgebra& c) {
    c.validate();
    std::vector<bool> live = support_can_reach_acc(c);
    std::vector<StateId> unknown;
    std::vector<std::size_t> index(c.size(), ~std::size_t{0});
    for (StateId x = 0; x < c.size(); ++x)
        if (live[x] && !c.accepting[x]) {
            index[x] = unknown.size();
            unknown.push_back(x);
        }
    std::vector<std::vector<Rat>> a(unknown.size(), std::vector<Rat>(unknown.size(), Rat(0)));
    std::vector<Rat> b(unknown.size(), Rat(0));
    for (std::size_t i = 0; i < unknown.size(); ++i) {
        a[i][i] = Rat(1);
        for (const auto& [s, p] : c.next[unknown[i]]) {
            if (c.accepting[s])
                b[i] += p;
            else if (live[s])
                a[i][index[s]] -= p;
        }
    }
    std::vector<Rat> sol = solve_linear(std::move(a), std::move(b));
    ReachVector out = ReachVector::constant(c.size(), Rat(0));
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x])
            out[x] = Rat(1);
        else if (live[x])
            out[x] = sol[index[x]];
    }
    return out;
}

// One application of the n-step reachability recurrence.
inline ReachVector pts_sigma_step(const PtsCoalgebra& c, const ReachVector& f) {
    ReachVector out = ReachVector::constant(c.size(), Rat(0));
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) {
            out[x] = Rat(1);
            continue;
        }
        for (const auto& [s, p] : c.next[x]) out[x] += p * f[s];
    }
    return out;
}

// Exact f_n: probability of hitting the accepting set within n-1 transitions.
inline ReachVector pts_reach_iter(const PtsCoalgebra& c, std::uint64_t n) {
    c.validate();
    ReachVector f = ReachVector::constant(c.size(), Rat(0));
    for (std::uint64_t k = 0; k < n; ++k) f = pts_sigma_step(c, f);
    return f;
}

// ---------------------------------------------------------------------------
// epsilon-additive supermartingales
// ---------------------------------------------------------------------------

struct AdditiveCert {
    Rat epsilon;
    ValueTable<ExtRat> values;

    void validate(const PtsCoalgebra& c) const {
        if (!(Rat(0) < epsilon)) throw error("additive certificate: epsilon must be positive");
        if (values.size() != c.size()) throw error("additive certificate: state coverage mismatch");
    }
};

inline ExtRat pts_expected_value(const PtsCoalgebra& c, const ValueTable<ExtRat>& f, StateId x) {
    ExtRat sum{Rat(0)};
    for (const auto& [s, p] : c.next[x]) sum = sum + p * f[s];
    return sum;
}

// Phi for the additive pseudo ranking domain: 0 at accepting states, expected
// next value plus epsilon elsewhere.
inline ValueTable<ExtRat> pts_additive_step(const PtsCoalgebra& c, const Rat& epsilon,
                                            const ValueTable<ExtRat>& f) {
    ValueTable<ExtRat> out = ValueTable<ExtRat>::constant(c.size(), ExtRat(Rat(0)));
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        out[x] = pts_expected_value(c, f, x) + ExtRat(epsilon);
    }
    return out;
}

// Shared by the exact check and the toleranced re-verification of converted
// certificates.
inline std::vector<PostfixViolation<ExtRat>> additive_violations(const PtsCoalgebra& c,
                                                                 const AdditiveCert& cert,
                                                                 const Rat& slack) {
    std::vector<PostfixViolation<ExtRat>> out;
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        ExtRat lhs = pts_expected_value(c, cert.values, x) + ExtRat(cert.epsilon);
        const ExtRat& rhs = cert.values[x];
        bool ok = rhs.is_infinite() ||
                  (!lhs.is_infinite() && lhs.finite_value() <= rhs.finite_value() + slack);
        if (!ok) out.push_back({x, cert.values[x], lhs});
    }
    return out;
}

inline Report check_additive(const PtsCoalgebra& c, const AdditiveCert& cert) {
    c.validate();
    cert.validate(c);
    Report rep;
    for (const auto& v : additive_violations(c, cert, Rat(0)))
        rep.violations.push_back({c.state_names[v.state], "<= " + v.candidate.to_string(),
                                  v.step_value.to_string()});
    rep.verdict = rep.violations.empty() ? Verdict::pass : Verdict::fail;
    for (StateId x = 0; x < c.size(); ++x)
        rep.bounds.emplace_back(c.state_names[x], Rat(cert.values[x].is_infinite() ? 0 : 1));
    return rep;
}

// ---------------------------------------------------------------------------
// alpha-multiplicative supermartingales
// ---------------------------------------------------------------------------

struct MultiplicativeCert {
    Rat alpha;
    Rat delta;
    ValueTable<ExtRat> values;

    void validate(const PtsCoalgebra& c) const {
        if (!(Rat(0) < alpha && alpha < Rat(1)))
            throw error("multiplicative certificate: alpha must be in (0,1)");
        if (!(Rat(0) < delta)) throw error("multiplicative certificate: delta must be positive");
        if (values.size() != c.size())
            throw error("multiplicative certificate: state coverage mismatch");
    }
};

// Phi for the multiplicative pseudo ranking domain over [alpha*delta, inf]:
// alpha*delta at accepting states, expected next value over alpha elsewhere.
inline ValueTable<ExtRat> pts_mult_step(const PtsCoalgebra& c, const Rat& alpha, const Rat& delta,
                                        const ValueTable<ExtRat>& f) {
    ValueTable<ExtRat> out = ValueTable<ExtRat>::constant(c.size(), ExtRat(alpha * delta));
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        ExtRat ev = pts_expected_value(c, f, x);
        out[x] = ev.is_infinite() ? ExtRat::infinity() : ExtRat(ev.finite_value() / alpha);
    }
    return out;
}

inline Report check_multiplicative(const PtsCoalgebra& c, const MultiplicativeCert& cert) {
    c.validate();
    cert.validate(c);
    Report rep;
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        const ExtRat& bx = cert.values[x];
        if (!(ExtRat(cert.delta) <= bx))
            rep.violations.push_back(
                {c.state_names[x], ">= delta = " + cert.delta.to_string(), bx.to_string()});
        ExtRat lhs = pts_expected_value(c, cert.values, x);
        ExtRat bound = bx.is_infinite() ? ExtRat::infinity() : ExtRat(cert.alpha * bx.finite_value());
        if (!(lhs <= bound))
            rep.violations.push_back(
                {c.state_names[x], "<= alpha*b = " + bound.to_string(), lhs.to_string()});
    }
    rep.verdict = rep.violations.empty() ? Verdict::pass : Verdict::fail;
    for (StateId x = 0; x < c.size(); ++x)
        rep.bounds.emplace_back(c.state_names[x], Rat(cert.values[x].is_infinite() ? 0 : 1));
    return rep;
}

// ---------------------------------------------------------------------------
// Distribution-valued ranking functions
// ---------------------------------------------------------------------------

// A distribution over N u {inf} with finite atoms, an optional single
// geometric tail (mass coeff*ratio^(i-start) at every i >= start), an atom at
// infinity, and optionally an unplaced finite-index residual beyond a known
// bound (produced by horizon-truncated synthesis).
struct TailSpec {
    struct Geo {
        std::uint64_t start = 0;
        Rat coeff;
        Rat ratio;
        friend bool operator==(const Geo&, const Geo&) = default;
    };
    struct Residual {
        std::uint64_t above = 0;  // mass lives somewhere in [above, inf)
        Rat mass;
        friend bool operator==(const Residual&, const Residual&) = default;
    };

    std::map<std::uint64_t, Rat> atoms;
    std::optional<Geo> geo;
    Rat inf_mass;
    std::optional<Residual> residual;

    friend bool operator==(const TailSpec&, const TailSpec&) = default;

    static TailSpec dirac_fin(std::uint64_t k) {
        TailSpec t;
        t.atoms[k] = Rat(1);
        return t;
    }
    static TailSpec dirac_inf() {
        TailSpec t;
        t.inf_mass = Rat(1);
        return t;
    }

    Rat geo_total() const {
        if (!geo) return Rat(0);
        return geo->coeff / (Rat(1) - geo->ratio);
    }

    void validate() const {
        Rat total = inf_mass;
        if (inf_mass.is_negative()) throw error("tail spec: negative mass at infinity");
        for (const auto& [k, m] : atoms) {
            if (!(Rat(0) < m)) throw error("tail spec: atom masses must be positive");
            if (geo && k >= geo->start) throw error("tail spec: atom inside geometric tail");
            total += m;
        }
        if (geo) {
            if (!(Rat(0) < geo->coeff)) throw error("tail spec: geo coefficient must be positive");
            if (!(Rat(0) < geo->ratio && geo->ratio < Rat(1)))
                throw error("tail spec: geo ratio must be in (0,1)");
            if (residual) throw error("tail spec: geo tail and residual are exclusive");
            total += geo_total();
        }
        if (residual) {
            if (!(Rat(0) < residual->mass)) throw error("tail spec: residual mass must be positive");
            if (residual->above < 1) throw error("tail spec: residual bound must be >= 1");
            if (!atoms.empty() && atoms.rbegin()->first >= residual->above)
                throw error("tail spec: atom beyond residual bound");
            total += residual->mass;
        }
        if (!(total == Rat(1)))
            throw error("tail spec: total mass is " + total.to_string() + ", expected 1");
    }

    // Largest a for which cdf(a) is exact; nullopt means every a.
    std::optional<std::uint64_t> exact_cdf_limit() const {
        if (!residual) return std::nullopt;
        return residual->above == 0 ? std::optional<std::uint64_t>(0) : residual->above - 1;
    }

    // P[0, a]; exact as long as a is within exact_cdf_limit.
    Rat cdf(std::uint64_t a) const {
        Rat sum;
        for (const auto& [k, m] : atoms) {
            if (k > a) break;
            sum += m;
        }
        if (geo && a >= geo->start)
            sum += geo->coeff * (Rat(1) - Rat::pow(geo->ratio, a - geo->start + 1)) /
                   (Rat(1) - geo->ratio);
        return sum;
    }

    // The certified lower bound q(b) = P[0, inf) = 1 - P{inf}.
    Rat q_value() const { return Rat(1) - inf_mass; }

    // Index from which the finite part is a pure geometric tail (or empty).
    std::uint64_t closed_form_from() const {
        std::uint64_t e = atoms.empty() ? 0 : atoms.rbegin()->first + 1;
        if (geo) e = std::max(e, geo->start);
        return e;
    }

    // Finite mass strictly above a equals tail_scale() * ratio^a for every
    // a >= closed_form_from() - 1 on residual-free specs (zero without geo).
    Rat tail_scale() const {
        if (!geo) return Rat(0);
        return geo->coeff * geo->ratio /
               ((Rat(1) - geo->ratio) * Rat::pow(geo->ratio, geo->start));
    }
};

struct DistCert {
    ValueTable<TailSpec> values;
    std::uint64_t horizon = 1;

    void validate(const PtsCoalgebra& c) const {
        if (horizon < 1) throw error("distribution certificate: horizon must be >= 1");
        if (values.size() != c.size())
            throw error("distribution certificate: state coverage mismatch");
        for (const auto& t : values.entries) t.validate();
    }
};

namespace detail {

// Decides whether sum_j w_j * ratio_j^a <= 0 holds for every a >= from, for
// finitely many rational ratios in (0,1]. Exact: the dominant term pins the
// sign beyond a computable index, the finitely many indices before it are
// evaluated directly.
struct TailAnalysis {
    enum class Kind { holds, fails, inconclusive } kind;
    std::uint64_t witness = 0;  // a failing index when kind == fails
};

inline TailAnalysis analyze_nonpositive(std::vector<std::pair<Rat, Rat>> terms,
                                        std::uint64_t from) {
    constexpr std::uint64_t scan_cap = 4096;
    // Merge equal ratios, drop vanished terms, sort by ratio descending.
    std::map<Rat, Rat> merged;
    for (auto& [ratio, w] : terms) {
        if (!(Rat(0) < ratio && ratio <= Rat(1))) throw error("tail analysis: ratio out of range");
        merged[ratio] += w;
    }
    std::vector<std::pair<Rat, Rat>> ts;  // (ratio, weight), descending ratio
    for (auto it = merged.rbegin(); it != merged.rend(); ++it)
        if (!it->second.is_zero()) ts.emplace_back(it->first, it->second);
    if (ts.empty()) return {TailAnalysis::Kind::holds, 0};
    const Rat& lead_w = ts[0].second;
    if (ts.size() == 1) {
        if (lead_w.is_negative()) return {TailAnalysis::Kind::holds, 0};
        return {TailAnalysis::Kind::fails, from};
    }
    Rat rest_abs;
    for (std::size_t j = 1; j < ts.size(); ++j) rest_abs += ts[j].second.abs();
    // Beyond a*, |lead| * r1^a > rest_abs * r2^a, so the lead term's sign wins.
    const Rat frac = ts[1].first / ts[0].first;  // < 1
    const Rat target = lead_w.abs() / rest_abs;
    std::uint64_t astar = from;
    {
        Rat p = Rat::pow(frac, astar);
        std::uint64_t step = 1;
        while (!(p < target)) {
            astar += step;
            p = p * Rat::pow(frac, step);
            step *= 2;
            if (astar > (1ull << 40)) return {TailAnalysis::Kind::inconclusive, 0};
        }
    }
    auto eval = [&](std::uint64_t a) {
        Rat h;
        for (const auto& [ratio, w] : ts) h += w * Rat::pow(ratio, a);
        return h;
    };
    if (!lead_w.is_negative()) {
        // Eventually positive; find a concrete violation, earliest if cheap.
        for (std::uint64_t a = from; a < std::min(astar, from + scan_cap); ++a)
            if (Rat(0) < eval(a)) return {TailAnalysis::Kind::fails, a};
        return {TailAnalysis::Kind::fails, astar};
    }
    if (astar - from > scan_cap) return {TailAnalysis::Kind::inconclusive, 0};
    for (std::uint64_t a = from; a < astar; ++a)
        if (Rat(0) < eval(a)) return {TailAnalysis::Kind::fails, a};
    return {TailAnalysis::Kind::holds, 0};
}

}  // namespace detail

// Pointwise cdf order on residual-free tail specs: a <= b iff every prefix
// probability of a is dominated by b's.
inline bool tail_leq(const TailSpec& a, const TailSpec& b) {
    if (a.residual || b.residual) throw error("tail_leq: undefined on truncated specs");
    std::uint64_t ext = std::max(a.closed_form_from(), b.closed_form_from());
    for (std::uint64_t k = 0; k <= ext; ++k)
        if (b.cdf(k) < a.cdf(k)) return false;
    // Beyond ext: cdf_a - cdf_b = (Fa - Fb) - Ta(k) + Tb(k) with geometric tails.
    std::vector<std::pair<Rat, Rat>> terms;
    Rat d = a.q_value() - b.q_value();
    if (!d.is_zero()) terms.emplace_back(Rat(1), d);
    if (a.geo) terms.emplace_back(a.geo->ratio, -a.tail_scale());
    if (b.geo) terms.emplace_back(b.geo->ratio, b.tail_scale());
    auto res = detail::analyze_nonpositive(std::move(terms), ext + 1);
    if (res.kind == detail::TailAnalysis::Kind::inconclusive)
        throw error("tail_leq: analysis inconclusive");
    return res.kind == detail::TailAnalysis::Kind::holds;
}

// Phi for the distribution-valued ranking domain, on specs without geometric
// tails (a mixture of distinct geometric tails leaves the representable
// family): Dirac at 0 for accepting states, shift-and-mix elsewhere.
inline ValueTable<TailSpec> pts_dist_step(const PtsCoalgebra& c, const ValueTable<TailSpec>& f) {
    ValueTable<TailSpec> out = ValueTable<TailSpec>::constant(c.size(), TailSpec::dirac_fin(0));
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        TailSpec mix;
        std::optional<std::uint64_t> res_above;
        Rat res_mass;
        for (const auto& [s, p] : c.next[x]) {
            const TailSpec& t = f[s];
            if (t.geo) throw error("pts_dist_step: geometric tails are not closed under mixing");
            for (const auto& [k, m] : t.atoms) mix.atoms[k + 1] += p * m;
            mix.inf_mass += p * t.inf_mass;
            if (t.residual) {
                res_mass += p * t.residual->mass;
                std::uint64_t ab = t.residual->above + 1;
                res_above = res_above ? std::min(*res_above, ab) : ab;
            }
        }
        if (!res_mass.is_zero()) mix.residual = TailSpec::Residual{*res_above, res_mass};
        out[x] = std::move(mix);
    }
    return out;
}

// ---------------------------------------------------------------------------
// check_distribution_ranking
// ---------------------------------------------------------------------------

inline Report check_distribution_ranking(const PtsCoalgebra& c, const DistCert& cert) {
    c.validate();
    cert.validate(c);
    Report rep;
    for (StateId x = 0; x < c.size(); ++x)
        rep.bounds.emplace_back(c.state_names[x], cert.values[x].q_value());

    // How far cdfs are exact, and how far the finite parts reach.
    bool all_closed = true;
    std::uint64_t exact_to = cert.horizon;
    std::uint64_t closed_from = 0;
    for (const auto& t : cert.values.entries) {
        if (auto lim = t.exact_cdf_limit()) {
            all_closed = false;
            exact_to = std::min(exact_to, *lim);
        }
        closed_from = std::max(closed_from, t.closed_form_from());
    }
    std::uint64_t check_to = all_closed ? std::max(cert.horizon, closed_from + 1) : exact_to;

    auto record_violation = [&](StateId x, std::uint64_t a, const Rat& lhs, const Rat& rhs) {
        rep.violations.push_back({c.state_names[x],
                                  "cdf[0," + std::to_string(a) + "] <= " + lhs.to_string(),
                                  rhs.to_string()});
    };

    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;  // Phi gives the top element there
        for (std::uint64_t a = 0; a <= check_to; ++a) {
            Rat lhs;
            if (a > 0)
                for (const auto& [s, p] : c.next[x]) lhs += p * cert.values[s].cdf(a - 1);
            Rat rhs = cert.values[x].cdf(a);
            if (lhs < rhs) record_violation(x, a, lhs, rhs);
        }
    }
    if (!rep.violations.empty()) {
        rep.verdict = Verdict::fail;
        return rep;
    }
    if (!all_closed) {
        rep.verdict = Verdict::verified_up_to_horizon;
        rep.horizon = check_to;
        return rep;
    }

    // Closed-form certificates: settle every a > check_to analytically.
    bool inconclusive = false;
    for (StateId x = 0; x < c.size() && rep.violations.empty(); ++x) {
        if (c.accepting[x]) continue;
        // Condition: D + sum tau*F' - tau*T'(a-1) ... >= 0, phrased as h(a) <= 0.
        std::vector<std::pair<Rat, Rat>> terms;
        Rat d;
        for (const auto& [s, p] : c.next[x]) {
            d += p * cert.values[s].q_value();
            if (cert.values[s].geo) {
                const auto& g = *cert.values[s].geo;
                terms.emplace_back(g.ratio, p * cert.values[s].tail_scale() / g.ratio);
            }
        }
        d -= cert.values[x].q_value();
        if (!d.is_zero()) terms.emplace_back(Rat(1), -d);
        if (cert.values[x].geo)
            terms.emplace_back(cert.values[x].geo->ratio, -cert.values[x].tail_scale());
        auto res = detail::analyze_nonpositive(std::move(terms), check_to + 1);
        switch (res.kind) {
            case detail::TailAnalysis::Kind::holds: break;
            case detail::TailAnalysis::Kind::inconclusive: inconclusive = true; break;
            case detail::TailAnalysis::Kind::fails: {
                std::uint64_t a = res.witness;
                Rat lhs;
                for (const auto& [s, p] : c.next[x]) lhs += p * cert.values[s].cdf(a - 1);
                record_violation(x, a, lhs, cert.values[x].cdf(a));
                break;
            }
        }
    }
    if (!rep.violations.empty()) {
        rep.verdict = Verdict::fail;
    } else if (inconclusive) {
        rep.verdict = Verdict::verified_up_to_horizon;
        rep.horizon = check_to;
    } else {
        rep.verdict = Verdict::pass;
    }
    return rep;
}

// Exact first-hitting-time distribution, truncated at the horizon: atom a is
// the probability of first entering the accepting set at step a, the mass at
// infinity is exactly 1 - Reach, and whatever finite mass lies beyond the
// horizon is kept as an explicit residual so totals stay exact.
inline DistCert synthesize_hitting_distribution(const PtsCoalgebra& c, std::uint64_t horizon) {
    if (horizon < 1) throw error("synthesize_hitting_distribution: horizon must be >= 1");
    c.validate();
    ReachVector reach = pts_reach_exact(c);
    DistCert cert;
    cert.horizon = horizon;
    cert.values.entries.resize(c.size());

    std::vector<Rat> cur(c.size());
    for (StateId x = 0; x < c.size(); ++x) {
        cur[x] = Rat(c.accepting[x] ? 1 : 0);
        if (c.accepting[x]) cert.values[x].atoms[0] = Rat(1);
    }
    for (std::uint64_t a = 1; a <= horizon; ++a) {
        std::vector<Rat> nxt(c.size());
        for (StateId x = 0; x < c.size(); ++x) {
            if (c.accepting[x]) continue;
            for (const auto& [s, p] : c.next[x]) nxt[x] += p * cur[s];
            if (!nxt[x].is_zero()) cert.values[x].atoms[a] = nxt[x];
        }
        cur = std::move(nxt);
    }
    for (StateId x = 0; x < c.size(); ++x) {
        TailSpec& t = cert.values[x];
        t.inf_mass = Rat(1) - reach[x];
        Rat placed = t.inf_mass;
        for (const auto& [k, m] : t.atoms) placed += m;
        Rat rest = Rat(1) - placed;
        if (!rest.is_zero()) t.residual = TailSpec::Residual{horizon + 1, rest};
        t.validate();
    }
    return cert;
}

// ---------------------------------------------------------------------------
// gamma-scaled non-counting supermartingales and discounted solving
// ---------------------------------------------------------------------------

// Accepting states carry no check condition (the step pins them to 1); the
// only constraint imposed there is membership in [0,1].
struct NonCountingCert {
    Rat gamma;
    ValueTable<Rat> values;

    void validate(const PtsCoalgebra& c) const {
        if (gamma.is_negative() || !(gamma < Rat(1)))
            throw error("non-counting certificate: gamma must be in [0,1)");
        if (values.size() != c.size())
            throw error("non-counting certificate: state coverage mismatch");
        for (const auto& v : values.entries)
            if (v.is_negative() || Rat(1) < v)
                throw error("non-counting certificate: values must lie in [0,1]");
    }
};

// Phi for r_{nc,gamma}: 1 at accepting states, discounted expectation elsewhere.
inline ReachVector pts_discount_step(const PtsCoalgebra& c, const Rat& gamma,
                                     const ReachVector& f) {
    ReachVector out = ReachVector::constant(c.size(), Rat(1));
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        Rat sum;
        for (const auto& [s, p] : c.next[x]) sum += p * f[s];
        out[x] = gamma * sum;
    }
    return out;
}

inline Report check_noncounting(const PtsCoalgebra& c, const NonCountingCert& cert) {
    c.validate();
    cert.validate(c);
    Report rep;
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        Rat sum;
        for (const auto& [s, p] : c.next[x]) sum += p * cert.values[s];
        Rat lhs = cert.gamma * sum;
        if (lhs < cert.values[x])
            rep.violations.push_back({c.state_names[x], "<= " + lhs.to_string(),
                                      cert.values[x].to_string()});
    }
    rep.verdict = rep.violations.empty() ? Verdict::pass : Verdict::fail;
    for (StateId x = 0; x < c.size(); ++x)
        rep.bounds.emplace_back(c.state_names[x], cert.values[x]);
    return rep;
}

// The unique fixed point of the discounted step: 1 on accepting states and
// v = gamma * P v elsewhere, by exact linear solve (strictly diagonally
// dominant for gamma < 1). This is the optimal non-counting certificate.
inline ReachVector solve_discounted(const PtsCoalgebra& c, const Rat& gamma) {
    c.validate();
    if (gamma.is_negative() || !(gamma < Rat(1)))
        throw error("solve_discounted: gamma must be in [0,1)");
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
        a[i][i] = Rat(1);
        for (const auto& [s, p] : c.next[unknown[i]]) {
            if (c.accepting[s])
                b[i] += gamma * p;
            else
                a[i][index[s]] -= gamma * p;
        }
    }
    std::vector<Rat> sol = solve_linear(std::move(a), std::move(b));
    ReachVector out = ReachVector::constant(c.size(), Rat(1));
    for (std::size_t i = 0; i < unknown.size(); ++i) out[unknown[i]] = sol[i];
    return out;
}

struct SweepResult {
    std::vector<std::pair<Rat, ReachVector>> rows;  // schedule order
    ReachVector supremum;
};

// Discounted values along a schedule of gammas plus the per-state supremum,
// the certified lower bound on reachability.
inline SweepResult gamma_sweep(const PtsCoalgebra& c, const std::vector<Rat>& schedule) {
    if (schedule.empty()) throw error("gamma_sweep: empty schedule");
    SweepResult res;
    res.supremum = ReachVector::constant(c.size(), Rat(0));
    for (const Rat& g : schedule) {
        ReachVector v = solve_discounted(c, g);
        for (StateId x = 0; x < c.size(); ++x)
            if (res.supremum[x] < v[x]) res.supremum[x] = v[x];
        res.rows.emplace_back(g, std::move(v));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Conversions between certificate flavors
// ---------------------------------------------------------------------------

// Exact expected number of steps to the accepting set; infinite wherever the
// reachability probability is below one.
inline ValueTable<ExtRat> expected_hitting_time(const PtsCoalgebra& c) {
    c.validate();
    ReachVector reach = pts_reach_exact(c);
    std::vector<StateId> unknown;
    std::vector<std::size_t> index(c.size(), ~std::size_t{0});
    for (StateId x = 0; x < c.size(); ++x)
        if (!c.accepting[x] && reach[x] == Rat(1)) {
            index[x] = unknown.size();
            unknown.push_back(x);
        }
    std::vector<std::vector<Rat>> a(unknown.size(), std::vector<Rat>(unknown.size(), Rat(0)));
    std::vector<Rat> b(unknown.size(), Rat(1));
    for (std::size_t i = 0; i < unknown.size(); ++i) {
        a[i][i] = Rat(1);
        for (const auto& [s, p] : c.next[unknown[i]]) {
            if (c.accepting[s]) continue;
            if (index[s] == ~std::size_t{0})
                throw error("expected_hitting_time: internal closure violation");
            a[i][index[s]] -= p;
        }
    }
    std::vector<Rat> sol = solve_linear(std::move(a), std::move(b));
    ValueTable<ExtRat> out = ValueTable<ExtRat>::constant(c.size(), ExtRat(Rat(0)));
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        out[x] = reach[x] == Rat(1) ? ExtRat(sol[index[x]]) : ExtRat::infinity();
    }
    return out;
}

// Executable form of the soundness-via-distribution argument for additive
// supermartingales: epsilon times the expected hitting time is dominated by
// every passing certificate.
inline Report verify_additive_dominates(const PtsCoalgebra& c, const AdditiveCert& cert) {
    Report pre = check_additive(c, cert);
    if (!pre.passed()) throw error("verify_additive_dominates: certificate does not pass");
    ValueTable<ExtRat> hit = expected_hitting_time(c);
    Report rep;
    for (StateId x = 0; x < c.size(); ++x) {
        ExtRat lhs = cert.epsilon * hit[x];
        if (!(lhs <= cert.values[x]))
            rep.violations.push_back({c.state_names[x], "<= " + cert.values[x].to_string(),
                                      "eps*E = " + lhs.to_string()});
    }
    rep.verdict = rep.violations.empty() ? Verdict::pass : Verdict::fail;
    for (StateId x = 0; x < c.size(); ++x)
        rep.bounds.emplace_back(c.state_names[x], Rat(cert.values[x].is_infinite() ? 0 : 1));
    return rep;
}

// Multiplicative-to-additive conversion through p'(a) = eps*(log_{1/alpha}(a/delta)+1),
// evaluated in fixed-point binary arithmetic. The multiplicative post-fixed
// condition is checked exactly on the clamped values first; the image is then
// re-verified against the additive condition with a 1e-9 tolerance, which is
// the best available for an inequality between transcendental expressions.
inline AdditiveCert convert_multiplicative(const PtsCoalgebra& c, const MultiplicativeCert& cert,
                                           const Rat& epsilon, unsigned precision = 128) {
    c.validate();
    cert.validate(c);
    if (!(Rat(0) < epsilon)) throw error("convert_multiplicative: epsilon must be positive");
    const Rat floor = cert.alpha * cert.delta;
    ValueTable<ExtRat> clamped = cert.values;
    for (StateId x = 0; x < c.size(); ++x) {
        if (!c.accepting[x] && !(ExtRat(cert.delta) <= cert.values[x]))
            throw error("convert_multiplicative: value below delta at non-accepting state " +
                        c.state_names[x]);
        if (!clamped[x].is_infinite() && clamped[x].finite_value() < floor)
            clamped[x] = ExtRat(floor);
    }
    for (StateId x = 0; x < c.size(); ++x) {
        if (c.accepting[x]) continue;
        ExtRat ev = pts_expected_value(c, clamped, x);
        ExtRat bound = clamped[x].is_infinite() ? ExtRat::infinity()
                                                : ExtRat(cert.alpha * clamped[x].finite_value());
        if (!(ev <= bound))
            throw error("convert_multiplicative: multiplicative condition fails exactly at " +
                        c.state_names[x]);
    }

    const Rat inv_alpha = Rat(1) / cert.alpha;
    AdditiveCert out;
    out.epsilon = epsilon;
    out.values.entries.resize(c.size());
    for (StateId x = 0; x < c.size(); ++x) {
        if (clamped[x].is_infinite()) {
            out.values[x] = ExtRat::infinity();
            continue;
        }
        Rat lg = fx_log_base(inv_alpha, clamped[x].finite_value() / cert.delta, precision).to_rat();
        Rat v = epsilon * (lg + Rat(1));
        out.values[x] = ExtRat(v.is_negative() ? Rat(0) : v);
    }
    if (!additive_violations(c, out, Rat(1, 1000000000)).empty())
        throw error("convert_multiplicative: converted certificate failed re-verification");
    return out;
}

}  // namespace corank

#endif

