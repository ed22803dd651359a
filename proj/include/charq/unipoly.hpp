#pragma once

// Univariate polynomials over GF(2^m), dense little-endian coefficient
// vectors.  Root finding extracts the split part with gcd(f, x^q - x)
// and then splits by randomized traces; with the default seed the output
// is reproducible run to run.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace charq {

struct Rng {
    explicit Rng(std::uint64_t seed = kDefaultSeed) : eng(seed) {}
    std::uint32_t element_bits(const FieldCtx& F) {
        return static_cast<std::uint32_t>(eng() % F.order());
    }
    std::uint32_t nonzero_bits(const FieldCtx& F) {
        std::uint32_t b;
        do { b = element_bits(F); } while (b == 0);
        return b;
    }
    std::mt19937_64 eng;
    static constexpr std::uint64_t kDefaultSeed = 0x5eed2c4a92f1b3ULL;
};

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(const FieldCtx* ctx) : ctx_(ctx) {}
    UniPoly(const FieldCtx* ctx, std::vector<std::uint32_t> coeffs)
        : ctx_(ctx), c_(std::move(coeffs)) { trim(); }

    static UniPoly from_elements(const std::vector<FieldElement>& coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("empty coefficient list");
        const FieldCtx* ctx = coeffs[0].ctx;
        std::vector<std::uint32_t> c;
        c.reserve(coeffs.size());
        for (auto e : coeffs) {
            if (e.ctx != ctx) throw std::invalid_argument("field context mismatch");
            c.push_back(e.bits);
        }
        return UniPoly(ctx, std::move(c));
    }

    const FieldCtx* ctx() const { return ctx_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::uint32_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
    }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }

    std::uint32_t eval_raw(std::uint32_t x) const {
        std::uint32_t r = 0;
        for (int i = degree(); i >= 0; --i) r = ctx_->mul_raw(r, x) ^ c_[i];
        return r;
    }
    FieldElement eval(FieldElement x) const {
        ctx_->check(x);
        return {eval_raw(x.bits), ctx_};
    }

    UniPoly operator+(const UniPoly& o) const {
        UniPoly r(ctx_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] ^= c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] ^= o.c_[i];
        r.trim();
        return r;
    }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly(ctx_);
        UniPoly r(ctx_);
        r.c_.assign(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] ^= ctx_->mul_raw(c_[i], o.c_[j]);
        }
        r.trim();
        return r;
    }

    UniPoly scaled(std::uint32_t s) const {
        UniPoly r(ctx_);
        r.c_.reserve(c_.size());
        for (auto x : c_) r.c_.push_back(ctx_->mul_raw(x, s));
        r.trim();
        return r;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scaled(ctx_->inv_raw(c_.back()));
    }

    // Remainder of *this by g (g != 0).
    UniPoly mod(const UniPoly& g) const {
        if (g.is_zero()) throw std::domain_error("division by zero polynomial");
        UniPoly r = *this;
        const int dg = g.degree();
        const std::uint32_t lead_inv = ctx_->inv_raw(g.c_.back());
        while (r.degree() >= dg) {
            const int shift = r.degree() - dg;
            const std::uint32_t q = ctx_->mul_raw(r.c_.back(), lead_inv);
            for (int i = 0; i <= dg; ++i)
                r.c_[i + shift] ^= ctx_->mul_raw(q, g.c_[i]);
            r.trim();
        }
        return r;
    }

    UniPoly square_mod(const UniPoly& g) const {
        // char 2: squaring just spreads exponents and squares coefficients
        UniPoly s(ctx_);
        if (!is_zero()) {
            s.c_.assign(2 * c_.size() - 1, 0);
            for (std::size_t i = 0; i < c_.size(); ++i)
                s.c_[2 * i] = ctx_->frob_raw(c_[i]);
            s.trim();
        }
        return s.mod(g);
    }

    UniPoly derivative() const {
        UniPoly r(ctx_);
        for (int i = 1; i <= degree(); ++i)
            if (i % 2 == 1) {
                r.c_.resize(i, 0);
                r.c_[i - 1] = c_[i];
            }
        r.trim();
        return r;
    }

    bool operator==(const UniPoly& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    const FieldCtx* ctx_ = nullptr;
    std::vector<std::uint32_t> c_;
};

inline UniPoly univariate_gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero())
        throw std::invalid_argument("gcd of two zero polynomials");
    while (!b.is_zero()) {
        UniPoly r = a.mod(b);
        a = b;
        b = r;
    }
    return a.monic();
}

namespace detail {

// Exact quotient f / g (remainder known to be zero).
inline UniPoly quotient_exact(const UniPoly& f, const UniPoly& g) {
    const FieldCtx& F = *f.ctx();
    UniPoly r = f;
    std::vector<std::uint32_t> q(std::max(0, f.degree() - g.degree() + 1), 0);
    const std::uint32_t lead_inv = F.inv_raw(g.coeff(g.degree()));
    while (r.degree() >= g.degree()) {
        const int shift = r.degree() - g.degree();
        const std::uint32_t c = F.mul_raw(r.coeff(r.degree()), lead_inv);
        q[shift] = c;
        UniPoly sub(&F, [&] {
            std::vector<std::uint32_t> v(shift + g.degree() + 1, 0);
            for (int i = 0; i <= g.degree(); ++i) v[i + shift] = F.mul_raw(c, g.coeff(i));
            return v;
        }());
        r = r + sub;
    }
    return UniPoly(&F, std::move(q));
}

// f squarefree, split over GF(q), deg >= 1: collect its roots.
inline void split_roots(const UniPoly& f, Rng& rng, std::vector<std::uint32_t>& out) {
    const FieldCtx& F = *f.ctx();
    const int d = f.degree();
    if (d == 1) {
        // monic x + c -> root c
        UniPoly m = f.monic();
        out.push_back(m.coeff(0));
        return;
    }
    if (d == 2) {
        UniPoly m = f.monic();
        auto roots = F.solve_quadratic(F.element(m.coeff(1)), F.element(m.coeff(0)));
        for (auto r : roots) out.push_back(r.bits);
        return;
    }
    // Trace splitting: h = sum (a x)^(2^i) separates roots by trace(a*root).
    for (;;) {
        const std::uint32_t a = rng.nonzero_bits(F);
        UniPoly h(&F, {0, a});
        UniPoly acc = h;
        for (int i = 1; i < F.degree(); ++i) {
            h = h.square_mod(f);
            acc = acc + h;
        }
        if (acc.is_zero()) continue;
        UniPoly g = univariate_gcd(f, acc);
        if (g.degree() > 0 && g.degree() < d) {
            split_roots(g, rng, out);
            split_roots(quotient_exact(f, g), rng, out);
            return;
        }
    }
}

}  // namespace detail

// All roots of f in the ambient field.  The split part is gcd(f, x^q - x),
// computed by m squarings of x modulo f; degree-1 and -2 factors are solved
// directly, higher split factors via randomized trace splitting.
inline std::vector<FieldElement> univariate_roots(const UniPoly& f, Rng& rng) {
    if (f.is_zero()) throw std::invalid_argument("root finding on the zero polynomial");
    const FieldCtx& F = *f.ctx();
    std::vector<std::uint32_t> raw;
    if (f.degree() == 1) {
        raw.push_back(f.monic().coeff(0));
    } else if (f.degree() >= 2) {
        UniPoly x(&F, {0, 1});
        UniPoly xq = x;
        for (int i = 0; i < F.degree(); ++i) xq = xq.square_mod(f);
        UniPoly split = univariate_gcd(f, xq + x);  // gcd(f, 0) = monic f when f splits
        if (split.degree() >= 1) detail::split_roots(split, rng, raw);
    }
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    std::vector<FieldElement> out;
    out.reserve(raw.size());
    for (auto b : raw) out.push_back(F.element(b));
    return out;
}

inline std::vector<FieldElement> univariate_roots(const UniPoly& f) {
    Rng rng;
    return univariate_roots(f, rng);
}

}  // namespace charq
