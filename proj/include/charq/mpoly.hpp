#pragma once

// Sparse homogeneous multivariate polynomials over GF(2^m) in up to four
// variables, with the char-2 formal calculus the surface analysis needs:
// partials (even exponents die), linear substitution, square detection,
// elementary symmetric builders, and the text grammar
//
//   poly   := term ('+' term)*
//   term   := coeff ('*' factor)* | factor ('*' factor)*
//   factor := var ('^' nat)?          var := x1|x2|x3|x4|z|w   (z,w = x4)
//   coeff  := 'u' ('^' nat)? | nat | '(' sum ')'
//
// Terms are kept in a graded-lex ordered map (leading term first), so
// iteration and printing are deterministic.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "linalg.hpp"
#include "unipoly.hpp"

namespace charq {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct Monomial {
    std::array<std::uint8_t, 4> e{0, 0, 0, 0};

    int degree() const { return e[0] + e[1] + e[2] + e[3]; }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

// Strict weak order placing the graded-lex leading term first.
struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.e > b.e;
    }
};

class MultiPoly {
public:
    using TermMap = std::map<Monomial, std::uint32_t, TermOrder>;

    MultiPoly() = default;
    MultiPoly(const FieldCtx* ctx, int nvars) : ctx_(ctx), nvars_(nvars) {
        if (nvars < 1 || nvars > 4) throw std::invalid_argument("nvars must be 1..4");
    }

    static MultiPoly zero(const FieldCtx& ctx, int nvars) { return MultiPoly(&ctx, nvars); }

    static MultiPoly monomial(const FieldCtx& ctx, int nvars, Monomial m, FieldElement c) {
        ctx.check(c);
        MultiPoly p(&ctx, nvars);
        p.add_term(m, c.bits);
        return p;
    }

    static MultiPoly variable(const FieldCtx& ctx, int nvars, int i) {
        Monomial m;
        m.e[i] = 1;
        return monomial(ctx, nvars, m, ctx.one());
    }

    static MultiPoly constant(const FieldCtx& ctx, int nvars, FieldElement c) {
        return monomial(ctx, nvars, Monomial{}, c);
    }

    const FieldCtx* ctx() const { return ctx_; }
    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::optional<int> declared_degree() const { return declared_degree_; }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    void declare_degree(int d) {
        for (const auto& [m, c] : terms_)
            if (m.degree() != d)
                throw std::invalid_argument("polynomial is not homogeneous of degree " + std::to_string(d));
        declared_degree_ = d;
    }

    void add_term(Monomial m, std::uint32_t bits) {
        if (bits == 0) return;
        auto [it, fresh] = terms_.emplace(m, bits);
        if (!fresh) {
            it->second ^= bits;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::uint32_t coeff_raw(Monomial m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }
    FieldElement coeff(Monomial m) const { return {coeff_raw(m), ctx_}; }

    MultiPoly operator+(const MultiPoly& o) const {
        require_compatible(o);
        MultiPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        r.declared_degree_.reset();
        return r;
    }

    MultiPoly operator*(const MultiPoly& o) const {
        require_compatible(o);
        MultiPoly r(ctx_, nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m;
                for (int i = 0; i < 4; ++i) m.e[i] = static_cast<std::uint8_t>(ma.e[i] + mb.e[i]);
                r.add_term(m, ctx_->mul_raw(ca, cb));
            }
        return r;
    }

    MultiPoly scaled(FieldElement s) const {
        ctx_->check(s);
        MultiPoly r(ctx_, nvars_);
        for (const auto& [m, c] : terms_) r.add_term(m, ctx_->mul_raw(c, s.bits));
        return r;
    }

    MultiPoly pow(int k) const {
        MultiPoly r = constant(*ctx_, nvars_, ctx_->one());
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        return ctx_ == o.ctx_ && nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    std::uint32_t eval_raw(const std::vector<std::uint32_t>& x) const {
        if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("point arity mismatch");
        int maxdeg[4] = {0, 0, 0, 0};
        for (const auto& [m, c] : terms_)
            for (int i = 0; i < nvars_; ++i) maxdeg[i] = std::max<int>(maxdeg[i], m.e[i]);
        std::array<std::array<std::uint32_t, 9>, 4> pw{};
        for (int i = 0; i < nvars_; ++i) {
            pw[i][0] = 1;
            for (int d = 1; d <= maxdeg[i]; ++d) pw[i][d] = ctx_->mul_raw(pw[i][d - 1], x[i]);
        }
        std::uint32_t acc = 0;
        for (const auto& [m, c] : terms_) {
            std::uint32_t v = c;
            for (int i = 0; i < nvars_; ++i)
                if (m.e[i]) v = ctx_->mul_raw(v, pw[i][m.e[i]]);
            acc ^= v;
        }
        return acc;
    }

    FieldElement eval(const std::vector<FieldElement>& x) const {
        std::vector<std::uint32_t> raw;
        raw.reserve(x.size());
        for (auto v : x) {
            ctx_->check(v);
            raw.push_back(v.bits);
        }
        return {eval_raw(raw), ctx_};
    }

    // Formal partial derivative; in char 2 every even exponent kills the term.
    MultiPoly partial(int i) const {
        if (i < 0 || i >= nvars_) throw std::invalid_argument("variable index out of range");
        MultiPoly r(ctx_, nvars_);
        for (const auto& [m, c] : terms_) {
            if (m.e[i] % 2 == 0) continue;
            Monomial d = m;
            --d.e[i];
            r.add_term(d, c);
        }
        return r;
    }

    // Substitute x_i -> column i of M (row-vector convention, so that
    // substitute(p, M*N) == substitute(substitute(p, N), M)).
    MultiPoly substitute(const Matrix& M) const {
        if (M.rows() != nvars_ || M.cols() != nvars_)
            throw std::invalid_argument("substitution matrix shape mismatch");
        if (!M.invertible()) throw std::invalid_argument("substitution matrix is singular");
        std::vector<MultiPoly> forms;
        forms.reserve(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            MultiPoly f(ctx_, nvars_);
            for (int j = 0; j < nvars_; ++j) {
                Monomial m;
                m.e[j] = 1;
                f.add_term(m, M.at(j, i));
            }
            forms.push_back(f);
        }
        MultiPoly r(ctx_, nvars_);
        for (const auto& [m, c] : terms_) {
            MultiPoly t = constant(*ctx_, nvars_, FieldElement{c, ctx_});
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < m.e[i]; ++k) t = t * forms[i];
            r = r + t;
        }
        if (declared_degree_) r.declared_degree_ = declared_degree_;
        return r;
    }

    // Over a perfect char-2 field, p is a square exactly when every
    // exponent is even; the root halves exponents and sqrts coefficients.
    std::optional<MultiPoly> square_root() const {
        for (const auto& [m, c] : terms_)
            for (int i = 0; i < 4; ++i)
                if (m.e[i] % 2 != 0) return std::nullopt;
        MultiPoly r(ctx_, nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial h;
            for (int i = 0; i < 4; ++i) h.e[i] = m.e[i] / 2;
            r.add_term(h, ctx_->sqrt_raw(c));
        }
        return r;
    }

    // Restriction to a line p0 + s*p1, as a univariate in s.
    UniPoly restrict_to_line(const std::vector<std::uint32_t>& p0,
                             const std::vector<std::uint32_t>& p1) const {
        const int d = std::max(degree(), 0);
        std::vector<std::uint32_t> coeffs(d + 1, 0);
        // binomial expansion per variable power; exponents are tiny
        for (const auto& [m, c] : terms_) {
            std::vector<std::uint32_t> acc{c};  // polynomial in s
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < m.e[i]; ++k) {
                    std::vector<std::uint32_t> nxt(acc.size() + 1, 0);
                    for (std::size_t j = 0; j < acc.size(); ++j) {
                        nxt[j] ^= ctx_->mul_raw(acc[j], p0[i]);
                        nxt[j + 1] ^= ctx_->mul_raw(acc[j], p1[i]);
                    }
                    acc = std::move(nxt);
                }
            for (std::size_t j = 0; j < acc.size() && j < coeffs.size(); ++j)
                coeffs[j] ^= acc[j];
        }
        return UniPoly(ctx_, std::move(coeffs));
    }

    std::string str() const;

    static MultiPoly parse(const std::string& text, const FieldCtx& ctx, int nvars,
                           std::optional<int> homogeneous_degree = std::nullopt);

private:
    void require_compatible(const MultiPoly& o) const {
        if (ctx_ != o.ctx_) throw std::invalid_argument("field context mismatch");
        if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    }

    const FieldCtx* ctx_ = nullptr;
    int nvars_ = 0;
    TermMap terms_;
    std::optional<int> declared_degree_;
};

// sigma_i in four variables, all coefficients 1.
inline MultiPoly elementary_symmetric(const FieldCtx& ctx, int i) {
    if (i < 1 || i > 4) throw std::invalid_argument("elementary symmetric index must be 1..4");
    MultiPoly p(&ctx, 4);
    for (int mask = 0; mask < 16; ++mask) {
        if (__builtin_popcount(mask) != i) continue;
        Monomial m;
        for (int j = 0; j < 4; ++j)
            if ((mask >> j) & 1) m.e[j] = 1;
        p.add_term(m, 1);
    }
    return p;
}

// sum_i x_i * dp/dx_i; equals deg(p)*p for homogeneous p, so it vanishes
// identically in char 2 whenever the degree is even.
inline MultiPoly euler_residual(const MultiPoly& p) {
    MultiPoly r(p.ctx(), p.nvars());
    for (int i = 0; i < p.nvars(); ++i)
        r = r + MultiPoly::variable(*p.ctx(), p.nvars(), i) * p.partial(i);
    return r;
}

// ---------------------------------------------------------------------------
// Parsing / printing

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, const FieldCtx& ctx, int nvars)
        : s_(text), ctx_(ctx), nvars_(nvars) {}

    MultiPoly run() {
        MultiPoly p(&ctx_, nvars_);
        skip_ws();
        if (eof()) throw ParseError("empty polynomial", pos_);
        p = p + parse_term();
        skip_ws();
        while (!eof()) {
            if (peek() == '+' || peek() == '-') {  // char 2: '-' reads as '+'
                ++pos_;
                p = p + parse_term();
                skip_ws();
            } else {
                throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
            }
        }
        return p;
    }

    std::uint32_t parse_coeff_sum_all() {
        std::uint32_t v = parse_coeff_atom();
        skip_ws();
        while (!eof() && (peek() == '+' || peek() == '-')) {
            ++pos_;
            v ^= parse_coeff_atom();
            skip_ws();
        }
        if (!eof()) throw ParseError("trailing characters in field element", pos_);
        return v;
    }

private:
    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }

    MultiPoly parse_term() {
        std::uint32_t coeff = 1;
        Monomial mono;
        bool any = false;
        for (;;) {
            skip_ws();
            if (eof()) break;
            const char c = peek();
            if (c == 'x' || c == 'z' || c == 'w') {
                parse_factor(mono);
                any = true;
            } else if (c == 'u' || c == '(' || (c >= '0' && c <= '9')) {
                coeff = ctx_.mul_raw(coeff, parse_coeff());
                any = true;
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", pos_);
            }
            skip_ws();
            if (!eof() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) throw ParseError("empty term", pos_);
        MultiPoly t(&ctx_, nvars_);
        t.add_term(mono, coeff);
        return t;
    }

    void parse_factor(Monomial& mono) {
        int var;
        if (peek() == 'z' || peek() == 'w') {
            var = 3;
            ++pos_;
        } else {
            ++pos_;  // 'x'
            if (eof() || peek() < '1' || peek() > '4')
                throw ParseError("expected variable index 1..4 after 'x'", pos_);
            var = peek() - '1';
            ++pos_;
        }
        if (var >= nvars_)
            throw ParseError("variable beyond declared arity", pos_ - 1);
        int e = 1;
        skip_ws();
        if (!eof() && peek() == '^') {
            ++pos_;
            e = parse_nat();
        }
        if (mono.e[var] + e > 200) throw ParseError("exponent too large", pos_);
        mono.e[var] = static_cast<std::uint8_t>(mono.e[var] + e);
    }

    std::uint32_t parse_coeff() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            std::uint32_t v = parse_coeff_atom();
            skip_ws();
            while (!eof() && (peek() == '+' || peek() == '-')) {
                ++pos_;
                v ^= parse_coeff_atom();
                skip_ws();
            }
            if (eof() || peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return v;
        }
        return parse_coeff_atom();
    }

    std::uint32_t parse_coeff_atom() {
        skip_ws();
        if (eof()) throw ParseError("expected coefficient", pos_);
        if (peek() == 'u') {
            ++pos_;
            int e = 1;
            skip_ws();
            if (!eof() && peek() == '^') {
                ++pos_;
                e = parse_nat();
            }
            if (ctx_.degree() == 1)
                throw ParseError("'u' is not an element of GF(2)", pos_);
            std::uint32_t v = 1;
            for (int i = 0; i < e; ++i) v = ctx_.mul_raw(v, 2);
            return v;
        }
        if (peek() >= '0' && peek() <= '9') {
            const int n = parse_nat();
            return static_cast<std::uint32_t>(n % 2);  // integer literals live in GF(2)
        }
        throw ParseError("expected coefficient", pos_);
    }

    int parse_nat() {
        skip_ws();
        if (eof() || peek() < '0' || peek() > '9') throw ParseError("expected number", pos_);
        long v = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            v = v * 10 + (peek() - '0');
            if (v > 100000) throw ParseError("number too large", pos_);
            ++pos_;
        }
        return static_cast<int>(v);
    }

    const std::string& s_;
    const FieldCtx& ctx_;
    int nvars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly MultiPoly::parse(const std::string& text, const FieldCtx& ctx, int nvars,
                                  std::optional<int> homogeneous_degree) {
    detail::PolyParser parser(text, ctx, nvars);
    MultiPoly p = parser.run();
    if (homogeneous_degree) p.declare_degree(*homogeneous_degree);
    return p;
}

inline FieldElement FieldCtx::parse_element(const std::string& text) const {
    detail::PolyParser parser(text, *this, 1);
    return {parser.parse_coeff_sum_all(), this};
}

inline std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    static const char* names[4] = {"x1", "x2", "x3", "x4"};
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (int i = 0; i < nvars_; ++i) {
            if (m.e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (m.e[i] > 1) mono += "^" + std::to_string(static_cast<int>(m.e[i]));
        }
        std::string cs = ctx_->element_str(c);
        if (mono.empty()) {
            out += cs.find('+') != std::string::npos ? "(" + cs + ")" : cs;
        } else if (c == 1) {
            out += mono;
        } else if (cs.find('+') != std::string::npos) {
            out += "(" + cs + ")*" + mono;
        } else {
            out += cs + "*" + mono;
        }
    }
    return out;
}

}  // namespace charq
