#pragma once

// Taylor development of a surface at a singular point: after an invertible
// coordinate change sending P to (0,0,0,1), a quartic with a double point
// there reads x4^2 Q(x) + x4 G(x) + B(x); the x4^4 and x4^3 coefficients
// vanish because P lies on the surface and annihilates the gradient.  The
// same decomposition works in any degree (a cubic gives x4 Q2 + cubic).

#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "mpoly.hpp"

namespace charq {

struct TaylorDecomposition {
    // parts[k] is the degree-k form in x1..x3 multiplying x4^(d-k).
    std::vector<MultiPoly> parts;
    Matrix transform;          // substitute(F, transform) has the point at e4
    Matrix transform_inverse;

    const MultiPoly& Q() const { return parts.at(2); }
    const MultiPoly& G() const { return parts.at(3); }
    const MultiPoly& B() const { return parts.at(4); }

    // Lowest order of the local expansion; 2 = double point, 3 = triple, ...
    int multiplicity() const {
        for (std::size_t k = 2; k < parts.size(); ++k)
            if (!parts[k].is_zero()) return static_cast<int>(k);
        throw std::logic_error("zero polynomial has no multiplicity");
    }
};

inline bool is_singular_at(const MultiPoly& F, const ProjPoint& P) {
    if (F.eval_raw(P.raw()) != 0) return false;
    for (int i = 0; i < F.nvars(); ++i)
        if (F.partial(i).eval_raw(P.raw()) != 0) return false;
    return true;
}

inline TaylorDecomposition taylor_at_singular_point(const MultiPoly& F, const ProjPoint& P) {
    if (F.nvars() != 4 || P.size() != 4)
        throw std::invalid_argument("taylor development needs a surface in P^3");
    if (!F.is_homogeneous() || F.is_zero())
        throw std::invalid_argument("taylor development needs a nonzero homogeneous form");
    if (P.ctx() != F.ctx()) throw std::invalid_argument("field context mismatch");
    if (!is_singular_at(F, P))
        throw std::invalid_argument("point is not a singular point of the surface");
    const FieldCtx& K = *F.ctx();
    const int d = F.degree();

    // Rows: the unit vectors skipping the pivot coordinate, then P itself;
    // e4 * S = P, and S is sparse with unit determinant.
    int pivot = 0;
    while (P.raw()[pivot] == 0) ++pivot;
    Matrix S(&K, 4, 4);
    int r = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == pivot) continue;
        S.at(r, i) = 1;
        ++r;
    }
    for (int j = 0; j < 4; ++j) S.at(3, j) = P.raw()[j];

    MultiPoly Fp = F.substitute(S);
    TaylorDecomposition out{{}, S, S.inverse()};
    out.parts.assign(d + 1, MultiPoly(&K, 3));
    for (const auto& [m, c] : Fp.terms()) {
        Monomial h;
        for (int i = 0; i < 3; ++i) h.e[i] = m.e[i];
        out.parts[h.degree()].add_term(h, c);
    }
    if (!out.parts[0].is_zero() || !out.parts[1].is_zero())
        throw std::logic_error("taylor development: low-order parts survive at a singular point");
    return out;
}

}  // namespace charq
