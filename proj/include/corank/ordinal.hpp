#ifndef CORANK_ORDINAL_HPP
#define CORANK_ORDINAL_HPP

#include <cstdint>
#include <string>

#include "corank/common.hpp"

namespace corank {

// An ordinal at most omega: Fin(n) or Omega. Rank certificates draw their
// values from the initial segment below an ambient cap, and the truncated
// successor saturates there.
struct OrdinalValue {
    bool omega = false;
    std::uint64_t n = 0;

    static OrdinalValue fin(std::uint64_t k) { return {false, k}; }
    static OrdinalValue omega_v() { return {true, 0}; }

    bool is_omega() const { return omega; }
    bool is_fin() const { return !omega; }

    friend bool operator==(const OrdinalValue& a, const OrdinalValue& b) {
        return a.omega == b.omega && (a.omega || a.n == b.n);
    }

    // Numeric comparison; omega is the largest.
    friend bool operator<(const OrdinalValue& a, const OrdinalValue& b) {
        if (a.omega) return false;
        if (b.omega) return true;
        return a.n < b.n;
    }
    friend bool operator<=(const OrdinalValue& a, const OrdinalValue& b) {
        return a == b || a < b;
    }

    std::string to_string() const { return omega ? "omega" : std::to_string(n); }
};

// min{v+1, cap}.
inline OrdinalValue trunc_succ(const OrdinalValue& v, const OrdinalValue& cap) {
    if (v.is_omega()) return v;
    OrdinalValue succ = OrdinalValue::fin(v.n + 1);
    return cap < succ ? cap : succ;
}

// The rank order is reversed: the cap is bottom and 0 is top.
inline bool ord_rank_leq(const OrdinalValue& a, const OrdinalValue& b) { return b <= a; }

inline OrdinalValue ord_min(const OrdinalValue& a, const OrdinalValue& b) { return a < b ? a : b; }
inline OrdinalValue ord_max(const OrdinalValue& a, const OrdinalValue& b) { return a < b ? b : a; }

}  // namespace corank

#endif
