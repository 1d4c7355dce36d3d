#ifndef CORANK_TESTS_HELPERS_HPP
#define CORANK_TESTS_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "corank/corank.hpp"

namespace th {

using namespace corank;

inline std::string fixture_path(const std::string& name) {
    return std::string(CORANK_FIXTURES_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw error("missing fixture: " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The five-state game with reaching set {x0, x2, x3}.
inline GameCoalgebra tpg_game() {
    GameCoalgebra c;
    c.state_names = {"x0", "x1", "x2", "x3", "x4"};
    c.accepting = {false, false, true, false, false};
    c.options = {{{2}, {1, 2}}, {{1, 2}, {3, 4}}, {}, {{}}, {}};
    c.normalize();
    return c;
}

// The six-state introduction game with the demonic state x2.
inline GameCoalgebra intro_game() {
    GameCoalgebra c;
    c.state_names = {"x0", "x1", "x2", "x3", "x4", "x5"};
    c.accepting = {false, true, false, false, false, false};
    c.options = {{{2}}, {{0}}, {{3, 4}}, {{1}}, {{5}}, {{3}}};
    c.normalize();
    return c;
}

// reach = (1/2, 1, 1, 0), accepting x2.
inline PtsCoalgebra ex2_8_pts() {
    PtsCoalgebra c;
    c.state_names = {"x0", "x1", "x2", "x3"};
    c.accepting = {false, false, true, false};
    c.next = {{{1, Rat(1, 2)}, {3, Rat(1, 2)}},
              {{1, Rat(1, 2)}, {2, Rat(1, 2)}},
              {{2, Rat(1)}},
              {{3, Rat(1)}}};
    return c;
}

// reach = (1/2, 1, 0), accepting x1.
inline PtsCoalgebra rptsnonas_pts() {
    PtsCoalgebra c;
    c.state_names = {"x0", "x1", "x2"};
    c.accepting = {false, true, false};
    c.next = {{{0, Rat(1, 3)}, {1, Rat(1, 3)}, {2, Rat(1, 3)}}, {{1, Rat(1)}}, {{2, Rat(1)}}};
    return c;
}

// The system whose additive step has two distinct fixed points.
inline PtsCoalgebra notcorec_pts() {
    PtsCoalgebra c;
    c.state_names = {"x0", "x1", "x2", "x3"};
    c.accepting = {false, false, false, true};
    c.next = {{{1, Rat(1, 2)}, {2, Rat(1, 2)}},
              {{1, Rat(1, 2)}, {3, Rat(1, 2)}},
              {{3, Rat(1)}},
              {{3, Rat(1)}}};
    return c;
}

// Truncated geometric-branch family: K chains of lengths 2^i plus a sink;
// reach(root) = 1 - 2^-K and the hitting time from the root is 2^i with
// probability 2^-i.
inline PtsCoalgebra rankdom2_pts(unsigned k) {
    PtsCoalgebra c;
    c.state_names.push_back("x");
    std::vector<std::vector<StateId>> chain(k + 1);
    for (unsigned i = 1; i <= k; ++i) {
        for (std::uint64_t j = 1; j <= (1ull << i); ++j) {
            chain[i].push_back(static_cast<StateId>(c.state_names.size()));
            c.state_names.push_back("b" + std::to_string(i) + "_" + std::to_string(j));
        }
    }
    StateId sink = static_cast<StateId>(c.state_names.size());
    c.state_names.push_back("sink");
    std::size_t n = c.state_names.size();
    c.accepting.assign(n, false);
    c.next.resize(n);
    for (unsigned i = 1; i <= k; ++i) {
        c.next[0].emplace_back(chain[i][0], Rat(BigInt{1}, BigInt{1} << i));
        for (std::size_t j = 0; j + 1 < chain[i].size(); ++j)
            c.next[chain[i][j]].emplace_back(chain[i][j + 1], Rat(1));
        StateId last = chain[i].back();
        c.accepting[last] = true;
        c.next[last].emplace_back(last, Rat(1));
    }
    c.next[0].emplace_back(sink, Rat(BigInt{1}, BigInt{1} << k));
    c.next[sink].emplace_back(sink, Rat(1));
    return c;
}

inline RankCertificate ex2_5_cert() {
    RankCertificate cert;
    cert.cap = OrdinalValue::omega_v();
    cert.values.entries = {OrdinalValue::fin(1), OrdinalValue::omega_v(), OrdinalValue::fin(0),
                           OrdinalValue::omega_v(), OrdinalValue::omega_v()};
    return cert;
}

inline RankCertificate intro_cert() {
    RankCertificate cert;
    cert.cap = OrdinalValue::omega_v();
    cert.values.entries = {OrdinalValue::fin(5), OrdinalValue::fin(0), OrdinalValue::fin(4),
                           OrdinalValue::fin(1), OrdinalValue::fin(3), OrdinalValue::fin(2)};
    return cert;
}

inline AdditiveCert ex2_11_cert() {
    AdditiveCert cert;
    cert.epsilon = Rat(1);
    cert.values.entries = {ExtRat::infinity(), ExtRat(Rat(2)), ExtRat(Rat(0)),
                           ExtRat::infinity()};
    return cert;
}

// The two additive fixed points of the notcorec system at a given epsilon.
inline AdditiveCert notcorec_b1(const Rat& eps) {
    AdditiveCert cert;
    cert.epsilon = eps;
    cert.values.entries = {ExtRat(Rat(5, 2) * eps), ExtRat(Rat(2) * eps), ExtRat(eps),
                           ExtRat(Rat(0))};
    return cert;
}
inline AdditiveCert notcorec_b2(const Rat& eps) {
    AdditiveCert cert;
    cert.epsilon = eps;
    cert.values.entries = {ExtRat::infinity(), ExtRat::infinity(), ExtRat(eps), ExtRat(Rat(0))};
    return cert;
}

// Finite multiplicative fixed point of the notcorec system, alpha > 1/2.
inline MultiplicativeCert notcorec_mult_b1(const Rat& alpha, const Rat& delta) {
    MultiplicativeCert cert;
    cert.alpha = alpha;
    cert.delta = delta;
    Rat b1 = alpha * delta / (Rat(2) * alpha - Rat(1));
    Rat b0 = Rat(1, 2) * (Rat(1) / alpha) * (b1 + delta);
    cert.values.entries = {ExtRat(b0), ExtRat(b1), ExtRat(delta), ExtRat(alpha * delta)};
    return cert;
}

// Kleene iterates of a step map from bottom: each one is a post-fixed point,
// hence a passing certificate; soundness suites feed on them.
template <typename V, typename Step>
std::vector<ValueTable<V>> kleene_prefixes(Step&& step, ValueTable<V> bottom,
                                           std::size_t max_len) {
    std::vector<ValueTable<V>> out;
    out.push_back(bottom);
    for (std::size_t i = 0; i < max_len; ++i) {
        ValueTable<V> next = step(out.back());
        if (next == out.back()) break;
        out.push_back(std::move(next));
    }
    return out;
}

}  // namespace th

#endif
