#pragma once

// GF(2^m) = GF(2)[t]/(modulus), 1 <= m <= 24.  Elements are bit vectors of
// length m (bit i = coefficient of t^i) tied to the FieldCtx that owns the
// modulus.  Mixing elements of two different contexts throws.
//
// For m <= 16 a log/exp table over a primitive element backs mul/inv/sqrt;
// above that the shift-and-xor fallback is used.  The ctx is immutable
// after construction and safe to share across threads.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf2poly.hpp"

namespace charq {

class FieldCtx;

struct FieldElement {
    std::uint32_t bits = 0;
    const FieldCtx* ctx = nullptr;

    bool is_zero() const { return bits == 0; }
    bool is_one() const { return bits == 1; }

    FieldElement operator+(FieldElement o) const;
    FieldElement operator-(FieldElement o) const { return *this + o; }
    FieldElement operator*(FieldElement o) const;
    FieldElement operator/(FieldElement o) const;
    FieldElement& operator+=(FieldElement o) { return *this = *this + o; }
    FieldElement& operator*=(FieldElement o) { return *this = *this * o; }
    FieldElement inv() const;
    FieldElement frobenius() const;
    FieldElement sqrt() const;
    FieldElement pow(std::uint64_t e) const;
    int trace() const;

    bool operator==(FieldElement o) const { return bits == o.bits && ctx == o.ctx; }
    bool operator!=(FieldElement o) const { return !(*this == o); }
    // Canonical order on the bit pattern; used for deterministic sorting.
    bool operator<(FieldElement o) const { return bits < o.bits; }

    std::string str() const;
};

class FieldCtx {
public:
    // Sieve constructor: smallest irreducible modulus of degree m.
    explicit FieldCtx(int m) : FieldCtx(m, gf2::first_irreducible(m)) {}

    FieldCtx(int m, std::uint64_t modulus) : m_(m), modulus_(modulus) {
        if (m < 1 || m > 24)
            throw std::invalid_argument("field degree out of range (1..24)");
        if (gf2::degree(modulus) != m)
            throw std::invalid_argument("modulus must be monic of degree m");
        if (m >= 2 && !gf2::irreducible(modulus))
            throw std::invalid_argument("modulus is reducible");
        if (m <= kTableLimit) build_tables();
        build_trace_table();
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    int degree() const { return m_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t order() const { return std::uint64_t{1} << m_; }

    FieldElement zero() const { return {0, this}; }
    FieldElement one() const { return {1, this}; }
    // The residue class of t (zero in GF(2) itself, where t divides out).
    FieldElement gen() const { return {m_ == 1 ? 0u : 2u, this}; }
    FieldElement element(std::uint32_t bits) const {
        if (bits >= order()) throw std::invalid_argument("element bits out of range");
        return {bits, this};
    }

    // --- raw (uint32) arithmetic; hot paths use these directly ---

    static std::uint32_t add_raw(std::uint32_t a, std::uint32_t b) { return a ^ b; }

    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const {
        if (!tables_.empty()) {
            if (a == 0 || b == 0) return 0;
            return exp_[log_[a] + log_[b]];
        }
        return static_cast<std::uint32_t>(gf2::mulmod(a, b, modulus_));
    }

    std::uint32_t inv_raw(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        if (!tables_.empty()) return exp_[order() - 1 - log_[a]];
        // Extended Euclid in GF(2)[t].
        std::uint64_t r0 = modulus_, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::uint64_t q = 0, r = r0;
            int d1 = gf2::degree(r1);
            for (int d = gf2::degree(r); d >= d1; d = gf2::degree(r)) {
                q ^= std::uint64_t{1} << (d - d1);
                r ^= r1 << (d - d1);
            }
            std::uint64_t s = s0 ^ gf2::mul(q, s1);
            r0 = r1; r1 = r; s0 = s1; s1 = s;
        }
        return static_cast<std::uint32_t>(gf2::mod(s0, modulus_));
    }

    std::uint32_t div_raw(std::uint32_t a, std::uint32_t b) const { return mul_raw(a, inv_raw(b)); }
    std::uint32_t frob_raw(std::uint32_t a) const { return mul_raw(a, a); }

    std::uint32_t sqrt_raw(std::uint32_t a) const {
        // Squaring is bijective; the inverse is x -> x^(2^(m-1)).
        std::uint32_t r = a;
        for (int i = 0; i < m_ - 1; ++i) r = frob_raw(r);
        return r;
    }

    int trace_raw(std::uint32_t a) const { return trace_table_[a >> 6] >> (a & 63) & 1; }

    std::uint32_t pow_raw(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul_raw(r, a);
            a = mul_raw(a, a);
            e >>= 1;
        }
        return r;
    }

    // Roots of z^2 + b z + c.  b = 0 gives the single (inseparable) root
    // sqrt(c); otherwise substitute z = b w, reduce to w^2 + w = c/b^2 and
    // solve the Artin-Schreier equation, which has roots exactly when the
    // trace of the right-hand side vanishes.
    std::vector<FieldElement> solve_quadratic(FieldElement b, FieldElement c) const {
        check(b); check(c);
        if (b.is_zero()) return {FieldElement{sqrt_raw(c.bits), this}};
        std::uint32_t e = mul_raw(c.bits, inv_raw(frob_raw(b.bits)));
        if (trace_raw(e) != 0) return {};
        std::uint32_t w0 = artin_schreier_root(e);
        std::uint32_t r0 = mul_raw(b.bits, w0);
        std::vector<FieldElement> roots{FieldElement{r0, this}, FieldElement{r0 ^ b.bits, this}};
        if (roots[1] < roots[0]) std::swap(roots[0], roots[1]);
        return roots;
    }

    // Smallest d | m with x^(2^d) = x.
    int subfield_degree(FieldElement x) const {
        check(x);
        for (int d = 1; d <= m_; ++d) {
            if (m_ % d != 0) continue;
            std::uint32_t r = x.bits;
            for (int i = 0; i < d; ++i) r = frob_raw(r);
            if (r == x.bits) return d;
        }
        return m_;  // unreachable
    }

    bool in_subfield(std::uint32_t bits, int k) const {
        std::uint32_t r = bits;
        for (int i = 0; i < k; ++i) r = frob_raw(r);
        return r == bits;
    }

    // All elements of the degree-k subfield, ascending by bit pattern.
    std::vector<std::uint32_t> subfield_elements(int k) const {
        if (m_ % k != 0) throw std::invalid_argument("k must divide m");
        std::vector<std::uint32_t> out;
        out.reserve(std::size_t{1} << k);
        for (std::uint64_t x = 0; x < order(); ++x)
            if (in_subfield(static_cast<std::uint32_t>(x), k))
                out.push_back(static_cast<std::uint32_t>(x));
        return out;
    }

    // Canonical generator of the GF(4) subfield (needs 2 | m): the smaller
    // of the two roots of z^2 + z + 1.
    FieldElement gf4_generator() const {
        if (m_ % 2 != 0) throw std::invalid_argument("field has no GF(4) subfield");
        auto roots = solve_quadratic(one(), one());
        if (roots.size() != 2) throw std::logic_error("z^2+z+1 must split when 2 | m");
        return roots[0];
    }

    void check(FieldElement x) const {
        if (x.ctx != this) throw std::invalid_argument("field context mismatch");
    }

    std::string spec_string() const { return "GF(2^" + std::to_string(m_) + ")"; }

    std::string element_str(std::uint32_t bits) const {
        if (bits == 0) return "0";
        std::string s;
        for (int i = m_; i >= 0; --i) {
            if (!((bits >> i) & 1)) continue;
            if (!s.empty()) s += "+";
            if (i == 0) s += "1";
            else if (i == 1) s += "u";
            else s += "u^" + std::to_string(i);
        }
        return s;
    }

    // Parses "u^2+1"-style element text; definition lives in mpoly.hpp
    // (include that header to use it).
    FieldElement parse_element(const std::string& text) const;

private:
    static constexpr int kTableLimit = 16;

    void build_tables() {
        const std::uint64_t q = order();
        if (q < 4) return;  // GF(2): raw path is already trivial
        std::uint32_t g = find_primitive();
        log_.assign(q, 0);
        exp_.assign(2 * (q - 1), 0);
        std::uint32_t x = 1;
        for (std::uint64_t i = 0; i < q - 1; ++i) {
            exp_[i] = x;
            exp_[i + (q - 1)] = x;
            log_[x] = static_cast<std::uint32_t>(i);
            x = static_cast<std::uint32_t>(gf2::mulmod(x, g, modulus_));
        }
        tables_.assign(1, 1);
    }

    std::uint32_t find_primitive() const {
        const std::uint64_t n = order() - 1;
        std::vector<std::uint64_t> primes;
        std::uint64_t r = n;
        for (std::uint64_t p = 2; p * p <= r; ++p)
            while (r % p == 0) { primes.push_back(p); while (r % p == 0) r /= p; }
        if (r > 1) primes.push_back(r);
        for (std::uint32_t g = 2; ; ++g) {
            bool ok = true;
            for (std::uint64_t p : primes) {
                std::uint32_t y = 1, b = g;
                std::uint64_t e = n / p;
                while (e) {
                    if (e & 1) y = static_cast<std::uint32_t>(gf2::mulmod(y, b, modulus_));
                    b = static_cast<std::uint32_t>(gf2::mulmod(b, b, modulus_));
                    e >>= 1;
                }
                if (y == 1) { ok = false; break; }
            }
            if (ok) return g;
        }
    }

    void build_trace_table() {
        trace_table_.assign((order() + 63) / 64, 0);
        for (std::uint64_t x = 0; x < order(); ++x) {
            std::uint32_t s = 0, p = static_cast<std::uint32_t>(x);
            for (int i = 0; i < m_; ++i) {
                s ^= p;
                p = static_cast<std::uint32_t>(gf2::mulmod(p, p, modulus_));
            }
            // trace lands in GF(2)
            if (s & 1) trace_table_[x >> 6] |= std::uint64_t{1} << (x & 63);
        }
    }

    // Root of w^2 + w = e, assuming trace(e) = 0.  Half-trace for odd m,
    // GF(2)-linear solve of w -> w^2 + w for even m (the m = 12 default).
    std::uint32_t artin_schreier_root(std::uint32_t e) const {
        if (m_ % 2 == 1) {
            std::uint32_t s = 0, p = e;
            for (int i = 1; i < m_; ++i) {
                p = frob_raw(p);
                if (i % 2 == 1) s ^= p;
            }
            return s;
        }
        // Columns of the map w -> w^2 + w on the basis 1, t, ..., t^(m-1).
        std::vector<std::uint32_t> col(m_);
        for (int j = 0; j < m_; ++j) {
            std::uint32_t tj = (m_ == 1) ? 0 : static_cast<std::uint32_t>(gf2::mod(std::uint64_t{1} << j, modulus_));
            col[j] = frob_raw(tj) ^ tj;
        }
        // Gaussian elimination on [A | e] with rows indexed by basis coords.
        std::vector<std::uint64_t> rows(m_, 0);
        for (int i = 0; i < m_; ++i) {
            std::uint64_t row = 0;
            for (int j = 0; j < m_; ++j)
                if ((col[j] >> i) & 1) row |= std::uint64_t{1} << j;
            if ((e >> i) & 1) row |= std::uint64_t{1} << m_;
            rows[i] = row;
        }
        std::uint32_t w = 0;
        int rank = 0;
        for (int j = 0; j < m_ && rank < m_; ++j) {
            int piv = -1;
            for (int i = rank; i < m_; ++i)
                if ((rows[i] >> j) & 1) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(rows[rank], rows[piv]);
            for (int i = 0; i < m_; ++i)
                if (i != rank && ((rows[i] >> j) & 1)) rows[i] ^= rows[rank];
            ++rank;
        }
        // Back-substitute: each pivot row gives one coordinate of w.
        for (int i = 0; i < m_; ++i) {
            std::uint64_t r = rows[i];
            if ((r & ((std::uint64_t{1} << m_) - 1)) == 0) {
                if ((r >> m_) & 1) throw std::logic_error("artin-schreier: inconsistent system");
                continue;
            }
            int j = __builtin_ctzll(r);
            if ((r >> m_) & 1) w |= std::uint32_t{1} << j;
        }
        return w;
    }

    int m_;
    std::uint64_t modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint64_t> trace_table_;
    std::vector<char> tables_;
};

inline FieldCtx field_new(int m) { return FieldCtx(m); }

inline void check_same_ctx(FieldElement a, FieldElement b) {
    if (a.ctx == nullptr || a.ctx != b.ctx)
        throw std::invalid_argument("field context mismatch");
}

inline FieldElement FieldElement::operator+(FieldElement o) const {
    check_same_ctx(*this, o);
    return {bits ^ o.bits, ctx};
}
inline FieldElement FieldElement::operator*(FieldElement o) const {
    check_same_ctx(*this, o);
    return {ctx->mul_raw(bits, o.bits), ctx};
}
inline FieldElement FieldElement::operator/(FieldElement o) const {
    check_same_ctx(*this, o);
    return {ctx->div_raw(bits, o.bits), ctx};
}
inline FieldElement FieldElement::inv() const { return {ctx->inv_raw(bits), ctx}; }
inline FieldElement FieldElement::frobenius() const { return {ctx->frob_raw(bits), ctx}; }
inline FieldElement FieldElement::sqrt() const { return {ctx->sqrt_raw(bits), ctx}; }
inline FieldElement FieldElement::pow(std::uint64_t e) const { return {ctx->pow_raw(bits, e), ctx}; }
inline int FieldElement::trace() const { return ctx->trace_raw(bits); }
inline std::string FieldElement::str() const { return ctx->element_str(bits); }

}  // namespace charq
