#ifndef CORANK_HIGHPREC_HPP
#define CORANK_HIGHPREC_HPP

#include <cstdint>

#include "corank/rational.hpp"

// Fixed-point evaluation of logarithms at a configurable binary precision.
// Only the multiplicative-to-additive certificate conversion needs this; all
// other arithmetic in the library stays exact.

namespace corank {

// Signed fixed-point number value = raw / 2^prec.
struct FixedReal {
    BigInt raw;
    unsigned prec = 128;

    static FixedReal from_rat(const Rat& r, unsigned prec) {
        return {(r.num() << prec) / r.den(), prec};
    }

    Rat to_rat() const { return Rat(raw, BigInt{1} << prec); }
};

inline FixedReal fx_add(const FixedReal& a, const FixedReal& b) {
    return {a.raw + b.raw, a.prec};
}
inline FixedReal fx_sub(const FixedReal& a, const FixedReal& b) {
    return {a.raw - b.raw, a.prec};
}
inline FixedReal fx_mul(const FixedReal& a, const FixedReal& b) {
    return {(a.raw * b.raw) >> a.prec, a.prec};
}
inline FixedReal fx_div(const FixedReal& a, const FixedReal& b) {
    if (b.raw.is_zero()) throw error("fixed-point division by zero");
    return {(a.raw << a.prec) / b.raw, a.prec};
}
inline FixedReal fx_div_u64(const FixedReal& a, std::uint64_t d) {
    return {a.raw / BigInt::from_u64(d), a.prec};
}

// ln(x) for rational x > 0: reduce to m in [1,2) via x = m * 2^k, then
// ln m = 2*atanh((m-1)/(m+1)) by series. Guard bits absorb truncation error.
inline FixedReal fx_ln(const Rat& x, unsigned prec) {
    if (x.is_zero() || x.is_negative()) throw error("fx_ln: argument must be positive");
    const unsigned work = prec + 32;

    // Binary exponent: largest k with 2^k <= x.
    std::int64_t k = static_cast<std::int64_t>(x.num().bit_length()) -
                     static_cast<std::int64_t>(x.den().bit_length());
    Rat two_k = k >= 0 ? Rat(BigInt{1} << static_cast<unsigned>(k), BigInt{1})
                       : Rat(BigInt{1}, BigInt{1} << static_cast<unsigned>(-k));
    Rat m = x / two_k;
    if (m < Rat(1)) {
        m = m * Rat(2);
        k -= 1;
    }
    if (!(m < Rat(2))) {
        m = m / Rat(2);
        k += 1;
    }

    // atanh series at t = (m-1)/(m+1) in [0, 1/3]: sum t^(2i+1)/(2i+1).
    FixedReal t = FixedReal::from_rat((m - Rat(1)) / (m + Rat(1)), work);
    FixedReal t2 = fx_mul(t, t);
    FixedReal term = t;
    FixedReal sum = {BigInt{0}, work};
    for (std::uint64_t i = 0; !term.raw.is_zero(); ++i) {
        sum = fx_add(sum, fx_div_u64(term, 2 * i + 1));
        term = fx_mul(term, t2);
        if (i > 4 * work) throw error("fx_ln: series failed to converge");
    }
    FixedReal ln_m = {sum.raw << 1, work};

    // ln2 by the same series at t = 1/3.
    FixedReal t3 = FixedReal::from_rat(Rat(1, 3), work);
    FixedReal t32 = fx_mul(t3, t3);
    FixedReal term2 = t3;
    FixedReal sum2 = {BigInt{0}, work};
    for (std::uint64_t i = 0; !term2.raw.is_zero(); ++i) {
        sum2 = fx_add(sum2, fx_div_u64(term2, 2 * i + 1));
        term2 = fx_mul(term2, t32);
    }
    FixedReal ln2 = {sum2.raw << 1, work};

    BigInt k_scaled = (BigInt{k} * ln2.raw);
    FixedReal result = {ln_m.raw + k_scaled, work};
    return {result.raw >> 32, prec};
}

// log_base(x) = ln(x) / ln(base), both rational, base != 1.
inline FixedReal fx_log_base(const Rat& base, const Rat& x, unsigned prec) {
    FixedReal lx = fx_ln(x, prec + 16);
    FixedReal lb = fx_ln(base, prec + 16);
    FixedReal q = fx_div(lx, lb);
    return {q.raw >> 16, prec};
}

}  // namespace corank

#endif
