#pragma once

// Projective points over GF(2^m), S4 orbits, and the char-2 conic
// classifier.  A nonzero conic in three variables falls into exactly one
// of three classes: a doubled line (all cross coefficients vanish, the
// conic is the square of a linear form), two lines, or a smooth conic.
// The split is decided by the strange point a = (a23, a13, a12), the only
// zero of the gradient: Q(a) = 0 gives two lines, Q(a) != 0 smooth.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "linalg.hpp"
#include "mpoly.hpp"

namespace charq {

class ProjPoint {
public:
    ProjPoint() = default;

    // Normalizes so the first nonzero coordinate is 1.
    ProjPoint(const FieldCtx* ctx, std::vector<std::uint32_t> coords)
        : ctx_(ctx), c_(std::move(coords)) {
        if (c_.size() != 3 && c_.size() != 4)
            throw std::invalid_argument("projective points have 3 or 4 coordinates");
        std::size_t j = 0;
        while (j < c_.size() && c_[j] == 0) ++j;
        if (j == c_.size()) throw std::invalid_argument("zero vector is not a projective point");
        if (c_[j] != 1) {
            const std::uint32_t s = ctx_->inv_raw(c_[j]);
            for (auto& x : c_) x = ctx_->mul_raw(x, s);
        }
        defdeg_ = 1;
        for (auto x : c_)
            defdeg_ = std::lcm(defdeg_, ctx_->subfield_degree(FieldElement{x, ctx_}));
    }

    static ProjPoint of(const std::vector<FieldElement>& coords) {
        if (coords.empty()) throw std::invalid_argument("empty coordinate list");
        const FieldCtx* ctx = coords[0].ctx;
        std::vector<std::uint32_t> raw;
        for (auto e : coords) {
            if (e.ctx != ctx) throw std::invalid_argument("field context mismatch");
            raw.push_back(e.bits);
        }
        return ProjPoint(ctx, std::move(raw));
    }

    const FieldCtx* ctx() const { return ctx_; }
    int size() const { return static_cast<int>(c_.size()); }
    int defdeg() const { return defdeg_; }
    const std::vector<std::uint32_t>& raw() const { return c_; }
    FieldElement coord(int i) const { return {c_[i], ctx_}; }

    bool operator==(const ProjPoint& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const { return c_ < o.c_; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += " : ";
            s += ctx_->element_str(c_[i]);
        }
        return s + ")";
    }

private:
    const FieldCtx* ctx_ = nullptr;
    std::vector<std::uint32_t> c_;
    int defdeg_ = 1;
};

inline ProjPoint normalize(const FieldCtx& ctx, std::vector<std::uint32_t> coords) {
    return ProjPoint(&ctx, std::move(coords));
}

// All coordinate permutations of a 4-coordinate point, deduplicated and in
// canonical order.
inline std::vector<ProjPoint> s4_orbit(const ProjPoint& p) {
    if (p.size() != 4) throw std::invalid_argument("s4_orbit needs a 4-coordinate point");
    std::array<int, 4> idx{0, 1, 2, 3};
    std::vector<ProjPoint> out;
    do {
        std::vector<std::uint32_t> c(4);
        for (int i = 0; i < 4; ++i) c[i] = p.raw()[idx[i]];
        out.emplace_back(p.ctx(), std::move(c));
    } while (std::next_permutation(idx.begin(), idx.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

enum class ConicKind { DoubleLine, TwoLines, SmoothConic };

inline const char* conic_kind_name(ConicKind k) {
    switch (k) {
        case ConicKind::DoubleLine: return "DoubleLine";
        case ConicKind::TwoLines: return "TwoLines";
        case ConicKind::SmoothConic: return "SmoothConic";
    }
    return "?";
}

// Double-point naming on surfaces: Node <-> SmoothConic tangent cone,
// Biplanar <-> TwoLines, Uniplanar <-> DoubleLine.
inline const char* cone_point_name(ConicKind k) {
    switch (k) {
        case ConicKind::DoubleLine: return "Uniplanar";
        case ConicKind::TwoLines: return "Biplanar";
        case ConicKind::SmoothConic: return "Node";
    }
    return "?";
}

struct ConicClass {
    ConicKind kind;
    // substitute(Q, transform) == scale * normal_form when rational_split.
    // Two conjugate lines over a quadratic extension have no rational
    // normal-form transform; the kind is still geometrically correct.
    bool rational_split = false;
    std::optional<Matrix> transform;
    std::optional<Matrix> transform_inverse;
    FieldElement scale;

    MultiPoly normal_form(const FieldCtx& ctx) const {
        switch (kind) {
            case ConicKind::DoubleLine: return MultiPoly::parse("x1^2", ctx, 3);
            case ConicKind::TwoLines: return MultiPoly::parse("x1*x2", ctx, 3);
            case ConicKind::SmoothConic: return MultiPoly::parse("x1*x2+x3^2", ctx, 3);
        }
        throw std::logic_error("bad conic kind");
    }
};

namespace detail {

// Invertible matrix with the given vector as its designated row, the other
// rows greedily completed from unit vectors.
inline Matrix complete_row_basis(const FieldCtx& F, const std::vector<std::uint32_t>& v, int row) {
    const int n = static_cast<int>(v.size());
    std::vector<std::vector<std::uint32_t>> rows{v};
    for (int e = 0; e < n && static_cast<int>(rows.size()) < n; ++e) {
        std::vector<std::uint32_t> unit(n, 0);
        unit[e] = 1;
        Matrix probe(&F, static_cast<int>(rows.size()) + 1, n);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < n; ++j) probe.at(static_cast<int>(i), j) = rows[i][j];
        for (int j = 0; j < n; ++j) probe.at(static_cast<int>(rows.size()), j) = unit[j];
        if (probe.rank() == static_cast<int>(rows.size()) + 1) rows.push_back(unit);
    }
    Matrix M(&F, n, n);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const auto& src = (i == row) ? rows[0] : rows[++next];
        for (int j = 0; j < n; ++j) M.at(i, j) = src[j];
    }
    if (!M.invertible()) throw std::logic_error("row basis completion failed");
    return M;
}

}  // namespace detail

inline ConicClass conic_normal_form(const MultiPoly& Q) {
    if (Q.is_zero()) throw std::invalid_argument("conic classifier needs a nonzero form");
    if (Q.nvars() != 3 || Q.degree() != 2 || !Q.is_homogeneous())
        throw std::invalid_argument("conic classifier needs a homogeneous degree-2 form in 3 variables");
    const FieldCtx& F = *Q.ctx();
    auto mono = [](int i, int j) {
        Monomial m;
        ++m.e[i];
        ++m.e[j];
        return m;
    };
    const std::uint32_t a12 = Q.coeff_raw(mono(0, 1));
    const std::uint32_t a13 = Q.coeff_raw(mono(0, 2));
    const std::uint32_t a23 = Q.coeff_raw(mono(1, 2));

    ConicClass out{ConicKind::SmoothConic, false, std::nullopt, std::nullopt, F.one()};

    if (a12 == 0 && a13 == 0 && a23 == 0) {
        // Q = (b1 x1 + b2 x2 + b3 x3)^2
        out.kind = ConicKind::DoubleLine;
        std::vector<std::uint32_t> b(3);
        for (int i = 0; i < 3; ++i) b[i] = F.sqrt_raw(Q.coeff_raw(mono(i, i)));
        int k = 0;
        while (b[k] == 0) ++k;
        // M*b = b_k*e1 makes the substituted line equal b_k*x1:
        // row 0 = e_k, remaining rows e_i + (b_i/b_k) e_k lie in ker(b).
        Matrix M(&F, 3, 3);
        M.at(0, k) = 1;
        int r = 1;
        for (int i = 0; i < 3; ++i) {
            if (i == k) continue;
            M.at(r, i) = 1;
            M.at(r, k) = F.div_raw(b[i], b[k]);
            ++r;
        }
        out.transform = M;
        out.transform_inverse = M.inverse();
        out.scale = FieldElement{F.mul_raw(b[k], b[k]), &F};
        out.rational_split = true;
        return out;
    }

    // Strange point, the unique zero of the gradient.
    std::vector<std::uint32_t> a{a23, a13, a12};
    const std::uint32_t qa = Q.eval_raw(a);
    out.kind = (qa == 0) ? ConicKind::TwoLines : ConicKind::SmoothConic;

    // Move the strange point to e3: last row of M0 is a.
    Matrix M0 = detail::complete_row_basis(F, a, 2);
    MultiPoly Q1 = Q.substitute(M0);
    const std::uint32_t c12 = Q1.coeff_raw(mono(0, 1));
    if (Q1.coeff_raw(mono(0, 2)) != 0 || Q1.coeff_raw(mono(1, 2)) != 0 || c12 == 0)
        throw std::logic_error("strange point normalization failed");
    const std::uint32_t s = F.sqrt_raw(F.inv_raw(c12));
    const std::uint32_t b1 = F.mul_raw(F.sqrt_raw(Q1.coeff_raw(mono(0, 0))), s);
    const std::uint32_t b2 = F.mul_raw(F.sqrt_raw(Q1.coeff_raw(mono(1, 1))), s);
    const std::uint32_t b3 = F.mul_raw(F.sqrt_raw(Q1.coeff_raw(mono(2, 2))), s);
    // Q1 = c12 * (x1 x2 + (b1 x1 + b2 x2 + b3 x3)^2)

    Matrix M1 = Matrix::identity(&F, 3);
    std::uint32_t scale = c12;
    if (out.kind == ConicKind::SmoothConic) {
        // absorb the linear form into x3
        const std::uint32_t i3 = F.inv_raw(b3);
        M1.at(0, 2) = F.mul_raw(b1, i3);
        M1.at(1, 2) = F.mul_raw(b2, i3);
        M1.at(2, 2) = i3;
        out.rational_split = true;
    } else if (b1 == 0 && b2 == 0) {
        out.rational_split = true;
    } else if (b2 == 0) {
        // x1 * (x2 + b1^2 x1)
        M1.at(0, 1) = F.mul_raw(b1, b1);
        out.rational_split = true;
    } else if (b1 == 0) {
        M1.at(1, 0) = F.mul_raw(b2, b2);
        out.rational_split = true;
    } else {
        // split x1 x2 + b1^2 x1^2 + b2^2 x2^2 when the line slopes are
        // rational: roots of b1^2 T^2 + T + b2^2
        const std::uint32_t bb1 = F.mul_raw(b1, b1);
        auto roots = F.solve_quadratic(FieldElement{F.inv_raw(bb1), &F},
                                       FieldElement{F.div_raw(F.mul_raw(b2, b2), bb1), &F});
        if (roots.size() == 2) {
            const std::uint32_t T1 = roots[0].bits;
            // col1 = (1 + T1 b1^2) e1 + T1 b1^2 e2, col2 = b1^2 (e1 + e2)
            M1.at(0, 0) = 1 ^ F.mul_raw(T1, bb1);
            M1.at(1, 0) = F.mul_raw(T1, bb1);
            M1.at(0, 1) = bb1;
            M1.at(1, 1) = bb1;
            scale = F.mul_raw(scale, bb1);
            out.rational_split = true;
        } else {
            out.rational_split = false;  // conjugate lines
        }
    }

    if (out.rational_split) {
        Matrix M = M1 * M0;
        out.transform = M;
        out.transform_inverse = M.inverse();
        out.scale = FieldElement{scale, &F};
    }
    return out;
}

}  // namespace charq
