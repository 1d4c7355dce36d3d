#ifndef CORANK_RATIONAL_HPP
#define CORANK_RATIONAL_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corank/common.hpp"

// Exact arbitrary-precision integers and rationals. Every probability,
// certificate value and linear solve in the library goes through these, so
// stabilization and lattice orders are decidable by plain equality.

namespace corank {

class BigInt {
public:
    BigInt() = default;

    BigInt(std::int64_t v) {  // NOLINT: implicit by design, mirrors int literals
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
        push_u64(mag);
    }

    static BigInt from_u64(std::uint64_t v) {
        BigInt r;
        if (v != 0) {
            r.sign_ = 1;
            r.push_u64(v);
        }
        return r;
    }

    static BigInt from_decimal(std::string_view s) {
        BigInt r;
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            ++i;
        }
        if (i >= s.size()) throw error("empty integer literal");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw error("bad digit in integer literal");
            r.mul_small_add(10, static_cast<std::uint32_t>(s[i] - '0'));
        }
        if (!r.limbs_.empty()) r.sign_ = neg ? -1 : 1;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    // Value as uint64; requires 0 <= *this < 2^64.
    std::uint64_t to_u64() const {
        if (sign_ < 0 || limbs_.size() > 2) throw error("BigInt out of uint64 range");
        std::uint64_t v = 0;
        if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return v;
    }

    bool fits_u64() const { return sign_ >= 0 && limbs_.size() <= 2; }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        r.sign_ = static_cast<std::int8_t>(-r.sign_);
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.limbs_, b.limbs_);
            if (c == 0) return r;
            const BigInt& big = c > 0 ? a : b;
            const BigInt& small = c > 0 ? b : a;
            r.limbs_ = sub_mag(big.limbs_, small.limbs_);
            r.sign_ = big.sign_;
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.sign_ == 0 || b.sign_ == 0) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                    r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r.limbs_[i + b.limbs_.size()] = static_cast<std::uint32_t>(carry);
        }
        r.trim();
        r.sign_ = static_cast<std::int8_t>(a.sign_ * b.sign_);
        return r;
    }

    // Truncating division (quotient rounds toward zero, remainder has the
    // dividend's sign). Divisor must be nonzero.
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.sign_ == 0) throw error("division by zero");
        if (a.sign_ == 0) return {BigInt{}, BigInt{}};
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c < 0) return {BigInt{}, a};
        BigInt q, r;
        if (b.limbs_.size() == 1) {
            std::uint64_t rem = 0;
            q.limbs_.assign(a.limbs_.size(), 0);
            for (std::size_t i = a.limbs_.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | a.limbs_[i];
                q.limbs_[i] = static_cast<std::uint32_t>(cur / b.limbs_[0]);
                rem = cur % b.limbs_[0];
            }
            q.trim();
            if (rem != 0) {
                r.limbs_.push_back(static_cast<std::uint32_t>(rem));
                r.sign_ = 1;
            }
        } else {
            divmod_mag(a.limbs_, b.limbs_, q.limbs_, r.limbs_);
            q.trim();
            r.trim();
            if (!q.limbs_.empty()) q.sign_ = 1;
            if (!r.limbs_.empty()) r.sign_ = 1;
        }
        if (!q.limbs_.empty()) q.sign_ = static_cast<std::int8_t>(a.sign_ * b.sign_);
        if (!r.limbs_.empty()) r.sign_ = a.sign_;
        return {q, r};
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    friend BigInt operator<<(const BigInt& a, unsigned k) {
        if (a.sign_ == 0 || k == 0) return a;
        BigInt r;
        unsigned limb_shift = k / 32, bit_shift = k % 32;
        r.limbs_.assign(a.limbs_.size() + limb_shift + 1, 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) << bit_shift;
            r.limbs_[i + limb_shift] |= static_cast<std::uint32_t>(cur);
            r.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(cur >> 32);
        }
        r.trim();
        r.sign_ = a.sign_;
        return r;
    }

    friend BigInt operator>>(const BigInt& a, unsigned k) {
        if (a.sign_ == 0) return a;
        unsigned limb_shift = k / 32, bit_shift = k % 32;
        if (limb_shift >= a.limbs_.size()) return BigInt{};
        BigInt r;
        r.limbs_.assign(a.limbs_.begin() + limb_shift, a.limbs_.end());
        if (bit_shift != 0) {
            for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
                std::uint64_t cur = r.limbs_[i] >> bit_shift;
                if (i + 1 < r.limbs_.size())
                    cur |= static_cast<std::uint64_t>(r.limbs_[i + 1]) << (32 - bit_shift);
                r.limbs_[i] = static_cast<std::uint32_t>(cur);
            }
        }
        r.trim();
        if (!r.limbs_.empty()) r.sign_ = a.sign_;
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
    }

    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (a.sign_ < 0) c = -c;
        return c <=> 0;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = static_cast<std::int8_t>(a.sign_ != 0);
        b.sign_ = static_cast<std::int8_t>(b.sign_ != 0);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        unsigned shift = std::min(a.trailing_zero_bits(), b.trailing_zero_bits());
        a = a >> a.trailing_zero_bits();
        while (!b.is_zero()) {
            b = b >> b.trailing_zero_bits();
            if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a, b);
            b = b - a;
        }
        return a << shift;
    }

    static BigInt pow(const BigInt& base, std::uint64_t e) {
        BigInt r{1}, b = base;
        while (e != 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Number of significant bits; 0 for zero.
    std::size_t bit_length() const {
        if (limbs_.empty()) return 0;
        std::uint32_t top = limbs_.back();
        std::size_t bits = (limbs_.size() - 1) * 32;
        while (top != 0) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::vector<std::uint32_t> chunks;  // base 1e9, little-endian
        BigInt cur = *this;
        cur.sign_ = 1;
        while (!cur.is_zero()) {
            auto [q, r] = divmod(cur, BigInt{1000000000});
            chunks.push_back(r.limbs_.empty() ? 0u : r.limbs_[0]);
            cur = q;
        }
        std::string out = sign_ < 0 ? "-" : "";
        out += std::to_string(chunks.back());
        for (std::size_t i = chunks.size() - 1; i-- > 0;) {
            std::string part = std::to_string(chunks[i]);
            out += std::string(9 - part.size(), '0') + part;
        }
        return out;
    }

private:
    void push_u64(std::uint64_t v) {
        limbs_.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) sign_ = 0;
    }

    void mul_small_add(std::uint32_t m, std::uint32_t add) {
        std::uint64_t carry = add;
        for (auto& limb : limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
    }

    unsigned trailing_zero_bits() const {
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            if (limbs_[i] != 0) {
                unsigned b = 0;
                std::uint32_t v = limbs_[i];
                while ((v & 1) == 0) {
                    ++b;
                    v >>= 1;
                }
                return static_cast<unsigned>(i * 32) + b;
            }
        }
        return 0;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r = big;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(r[i]) + carry +
                                (i < small.size() ? small[i] : 0);
            r[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            if (carry == 0 && i >= small.size()) break;
        }
        if (carry != 0) r.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                               (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            borrow = cur < 0;
            if (cur < 0) cur += static_cast<std::int64_t>(1) << 32;
            r[i] = static_cast<std::uint32_t>(cur);
            if (borrow == 0 && i >= b.size()) break;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on magnitudes; requires |b| > 1 limb and |a| >= |b|.
    static void divmod_mag(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
        unsigned shift = 0;
        for (std::uint32_t top = b.back(); (top & 0x80000000u) == 0; top <<= 1) ++shift;
        auto shl = [](std::vector<std::uint32_t> v, unsigned s) {
            if (s == 0) return v;
            std::uint32_t carry = 0;
            for (auto& limb : v) {
                std::uint32_t next = limb >> (32 - s);
                limb = (limb << s) | carry;
                carry = next;
            }
            if (carry != 0) v.push_back(carry);
            return v;
        };
        a = shl(std::move(a), shift);
        b = shl(std::move(b), shift);
        const std::size_t n = b.size(), m = a.size() - n;
        a.push_back(0);
        q.assign(m + 1, 0);
        for (std::size_t j = m + 1; j-- > 0;) {
            std::uint64_t top2 = (static_cast<std::uint64_t>(a[j + n]) << 32) | a[j + n - 1];
            std::uint64_t qhat = top2 / b[n - 1];
            std::uint64_t rhat = top2 % b[n - 1];
            while (qhat >= (1ull << 32) ||
                   qhat * b[n - 2] > ((rhat << 32) | a[j + n - 2])) {
                --qhat;
                rhat += b[n - 1];
                if (rhat >= (1ull << 32)) break;
            }
            // Multiply-subtract qhat*b from a[j .. j+n].
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t prod = qhat * b[i] + carry;
                carry = prod >> 32;
                std::int64_t cur = static_cast<std::int64_t>(a[i + j]) - borrow -
                                   static_cast<std::int64_t>(prod & 0xffffffffu);
                borrow = cur < 0;
                if (cur < 0) cur += static_cast<std::int64_t>(1) << 32;
                a[i + j] = static_cast<std::uint32_t>(cur);
            }
            std::int64_t top = static_cast<std::int64_t>(a[j + n]) - borrow -
                               static_cast<std::int64_t>(carry);
            if (top < 0) {
                // qhat was one too large; add b back.
                --qhat;
                std::uint64_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t cur = static_cast<std::uint64_t>(a[i + j]) + b[i] + c2;
                    a[i + j] = static_cast<std::uint32_t>(cur);
                    c2 = cur >> 32;
                }
                top += static_cast<std::int64_t>(c2) + (static_cast<std::int64_t>(1) << 32);
                top -= static_cast<std::int64_t>(1) << 32;
            }
            a[j + n] = static_cast<std::uint32_t>(top);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        a.resize(n);
        if (shift != 0) {
            std::uint32_t carry = 0;
            for (std::size_t i = a.size(); i-- > 0;) {
                std::uint32_t next = a[i] << (32 - shift);
                a[i] = (a[i] >> shift) | carry;
                carry = next;
            }
        }
        r = std::move(a);
    }

    std::int8_t sign_ = 0;
    std::vector<std::uint32_t> limbs_;
};

// Reduced rational: den > 0, gcd(|num|, den) = 1, zero is 0/1.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t v) : num_(v), den_(1) {}  // NOLINT: implicit
    Rat(std::int64_t n, std::int64_t d) : Rat(BigInt{n}, BigInt{d}) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rat from_string(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rat(BigInt::from_decimal(s), BigInt{1});
        return Rat(BigInt::from_decimal(s.substr(0, slash)),
                   BigInt::from_decimal(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_ == BigInt{1}; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw error("division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend Rat operator-(const Rat& a) { return Rat(-a.num_, a.den_); }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        return (a.num_ * b.den_) <=> (b.num_ * a.den_);
    }

    static Rat pow(const Rat& base, std::uint64_t e) {
        return Rat(BigInt::pow(base.num_, e), BigInt::pow(base.den_, e));
    }

    Rat abs() const { return is_negative() ? -*this : *this; }

    // Decimal approximation, only for diagnostics and statistics output.
    double to_double() const {
        if (num_.is_zero()) return 0.0;
        // Scale so the quotient carries ~62 significant bits, then ldexp back.
        std::size_t nb = num_.bit_length(), db = den_.bit_length();
        int extra = static_cast<int>(db) - static_cast<int>(nb) + 62;
        if (extra < 0) extra = 0;
        BigInt scaled = num_ << static_cast<unsigned>(extra);
        bool neg = scaled.is_negative();
        if (neg) scaled = -scaled;
        BigInt quot = scaled / den_;
        int drop = 0;
        while (!quot.fits_u64()) {
            quot = quot >> 8;
            drop += 8;
        }
        double result = std::ldexp(static_cast<double>(quot.to_u64()), drop - extra);
        return neg ? -result : result;
    }

    std::string to_string() const {
        if (is_integer()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    void normalize() {
        if (den_.is_zero()) throw error("rational with zero denominator");
        if (den_.is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt{1};
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (!(g == BigInt{1})) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }

    BigInt num_;
    BigInt den_;
};

// Value in [0, inf]; the codomain of additive/multiplicative supermartingales.
class ExtRat {
public:
    ExtRat() : finite_(0) {}
    ExtRat(Rat v) : finite_(std::move(v)) {  // NOLINT: implicit
        if (finite_.is_negative()) throw error("ExtRat must be nonnegative");
    }
    ExtRat(std::int64_t v) : ExtRat(Rat(v)) {}  // NOLINT: implicit

    static ExtRat infinity() {
        ExtRat r;
        r.inf_ = true;
        return r;
    }

    bool is_infinite() const { return inf_; }
    const Rat& finite_value() const {
        if (inf_) throw error("infinite ExtRat has no finite value");
        return finite_;
    }

    friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
        if (a.inf_ || b.inf_) return infinity();
        return ExtRat(a.finite_ + b.finite_);
    }

    friend ExtRat operator*(const Rat& k, const ExtRat& v) {
        if (k.is_negative()) throw error("negative scaling of ExtRat");
        if (v.inf_) return k.is_zero() ? ExtRat(Rat(0)) : infinity();
        return ExtRat(k * v.finite_);
    }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.finite_ == b.finite_;
    }

    friend bool operator<=(const ExtRat& a, const ExtRat& b) {
        if (b.inf_) return true;
        if (a.inf_) return false;
        return a.finite_ <= b.finite_;
    }
    friend bool operator<(const ExtRat& a, const ExtRat& b) { return a <= b && !(a == b); }

    std::string to_string() const { return inf_ ? "inf" : finite_.to_string(); }

private:
    bool inf_ = false;
    Rat finite_;
};

}  // namespace corank

#endif
