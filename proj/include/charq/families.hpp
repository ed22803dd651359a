#pragma once

// Constructors for the explicit surfaces under study, each paired with a
// computed expectation: the cayley cubic, the inseparable 14-point quartic
// z^2(x1x2+x3^2) + y1 y2 y3 y4 and its GF(16) instance, the w^4 + w^2 l^2
// + B(x) construction, the S4-symmetric five-parameter family with its
// full orbit classifier, and a pinned monoid (triple-point) example.
//
// Expectations are data: verification compares them against the
// enumeration and reports a diff rather than asserting blindly.  Points
// of an expectation are the ambient-rational ones; groups whose defining
// quadratic does not split over GF(2^m) simply contribute no points, and
// the geometric total is recorded separately.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "singular.hpp"

namespace charq {

struct FamilyError : std::runtime_error {
    FamilyError(const std::string& what, std::string cond)
        : std::runtime_error(what + " [" + cond + "]"), condition(std::move(cond)) {}
    std::string condition;
};

struct ExpectedGroup {
    std::string label;
    std::vector<ProjPoint> points;
    std::optional<ConicKind> cone;  // set when the family pins the cone kind
};

struct FamilyExpectation {
    std::vector<ExpectedGroup> groups;
    std::optional<int> total_geometric;  // count over the algebraic closure
    bool reducible = false;
    bool infinite_singular = false;
    std::vector<std::string> notes;

    bool degenerate() const { return reducible || infinite_singular; }

    std::vector<ProjPoint> all_points() const {
        std::vector<ProjPoint> out;
        for (const auto& g : groups) out.insert(out.end(), g.points.begin(), g.points.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    int total() const { return static_cast<int>(all_points().size()); }
};

struct Family {
    MultiPoly surface;
    FamilyExpectation expect;
};

struct ExpectationDiff {
    std::vector<ProjPoint> missing;  // expected but not enumerated
    std::vector<ProjPoint> extra;    // enumerated but not expected
    bool clean() const { return missing.empty() && extra.empty(); }
};

inline ExpectationDiff compare_expectation(const FamilyExpectation& exp,
                                           const std::vector<ProjPoint>& found) {
    ExpectationDiff d;
    auto want = exp.all_points();
    for (const auto& p : want)
        if (!std::binary_search(found.begin(), found.end(), p)) d.missing.push_back(p);
    for (const auto& p : found)
        if (!std::binary_search(want.begin(), want.end(), p)) d.extra.push_back(p);
    return d;
}

// ---------------------------------------------------------------------------

inline MultiPoly cayley_cubic(const FieldCtx& K) { return elementary_symmetric(K, 3); }

// Fixed monoid instance z x1x2x3 + x1^4 + x2^4 + x3^4 + x1x2x3(x1+x2+x3);
// its four singular points are pinned in the golden test.
inline Family triple_point_example(const FieldCtx& K) {
    auto G = MultiPoly::parse("x1*x2*x3", K, 4);
    auto B = MultiPoly::parse(
        "x1^4 + x2^4 + x3^4 + x1^2*x2*x3 + x1*x2^2*x3 + x1*x2*x3^2", K, 4);
    Family fam{MultiPoly::parse("z", K, 4) * G + B, {}};
    fam.expect.total_geometric = 4;
    fam.expect.groups.push_back(
        {"triple point", {ProjPoint(&K, {0, 0, 0, 1})}, std::nullopt});
    fam.expect.groups.push_back({"double points on {G=B=0}",
                                 {ProjPoint(&K, {0, 1, 1, 0}), ProjPoint(&K, {1, 0, 1, 0}),
                                  ProjPoint(&K, {1, 1, 0, 0})},
                                 std::nullopt});
    return fam;
}

namespace detail {

// Non-tangency of the line {l = 0} to the conic Q in P^2: the restriction
// of Q to the line must keep a nonzero cross term.
inline bool line_tangent_to_conic(const MultiPoly& Q, const MultiPoly& l) {
    const FieldCtx& K = *Q.ctx();
    // two independent points spanning the line
    std::vector<std::uint32_t> coef(3);
    for (int i = 0; i < 3; ++i) {
        Monomial m;
        m.e[i] = 1;
        coef[i] = l.coeff_raw(m);
    }
    std::vector<std::vector<std::uint32_t>> basis;
    for (int i = 0; i < 3 && basis.size() < 2; ++i) {
        // kernel vectors of the 1x3 system
        for (int j = i + 1; j < 3 && basis.size() < 2; ++j) {
            std::vector<std::uint32_t> v(3, 0);
            v[i] = coef[j];
            v[j] = coef[i];
            if (v == std::vector<std::uint32_t>{0, 0, 0}) continue;
            // check independence with what we have
            if (basis.size() == 1) {
                Matrix M(&K, 2, 3);
                for (int t = 0; t < 3; ++t) {
                    M.at(0, t) = basis[0][t];
                    M.at(1, t) = v[t];
                }
                if (M.rank() < 2) continue;
            }
            basis.push_back(v);
        }
    }
    if (basis.size() < 2) {
        // l has a single nonzero coefficient; complete with unit vectors
        for (int e = 0; e < 3 && basis.size() < 2; ++e) {
            std::vector<std::uint32_t> v(3, 0);
            v[e] = 1;
            std::uint32_t dot = 0;
            for (int t = 0; t < 3; ++t) dot ^= K.mul_raw(v[t], coef[t]);
            if (dot != 0) continue;
            if (basis.size() == 1 && basis[0] == v) continue;
            if (basis.size() == 1) {
                Matrix M(&K, 2, 3);
                for (int t = 0; t < 3; ++t) {
                    M.at(0, t) = basis[0][t];
                    M.at(1, t) = v[t];
                }
                if (M.rank() < 2) continue;
            }
            basis.push_back(v);
        }
    }
    // Q(s p + t q) = alpha s^2 + beta s t + gamma t^2; tangent iff beta = 0
    UniPoly r = Q.restrict_to_line(basis[0], basis[1]);
    return r.coeff(1) == 0;
}

}  // namespace detail

// The inseparable construction z^2 (x1 x2 + x3^2) + y1 y2 y3 y4, where
// y3 = a1 x1 + a2 x2 + a3 x3, y1 = y3 + x1, y2 = y3 + x2, y4 = y3 + x1 + x2.
// For admissible parameters the surface has exactly 14 singular points
// over the closure: the centre P, the six nodes of B at z = 0, one point
// over the strange point of Q, and three pairs cut out by quadratics.
// Admissibility is decided exactly, by evaluating the named inequations;
// no root extraction is needed for that.
inline Family inseparable_step4(FieldElement a1, FieldElement a2, FieldElement a3) {
    const FieldCtx& K = *a1.ctx;
    K.check(a2);
    K.check(a3);
    const auto one = K.one();
    if (a3.is_zero()) throw FamilyError("inadmissible parameters", "a3 != 0");
    if (a3.is_one()) throw FamilyError("inadmissible parameters", "a3 != 1");

    auto lin = [&](FieldElement c1, FieldElement c2, FieldElement c3) {
        MultiPoly l(&K, 3);
        l.add_term(Monomial{1, 0, 0, 0}, c1.bits);
        l.add_term(Monomial{0, 1, 0, 0}, c2.bits);
        l.add_term(Monomial{0, 0, 1, 0}, c3.bits);
        return l;
    };
    MultiPoly y3 = lin(a1, a2, a3);
    MultiPoly y1 = lin(a1 + one, a2, a3);
    MultiPoly y2 = lin(a1, a2 + one, a3);
    MultiPoly y4 = lin(a1 + one, a2 + one, a3);
    MultiPoly B3 = y1 * y2 * y3 * y4;
    MultiPoly Q3 = MultiPoly::parse("x1*x2 + x3^2", K, 3);

    // the three pair quadratics, in the slice coordinate on x1=0 / x2=0 /
    // x1=x2 respectively
    const FieldElement lead = a3 * a3 + one;
    auto quad = [&](FieldElement cst) {
        return UniPoly(&K, {cst.bits, a3.bits, lead.bits});
    };
    UniPoly qb = quad(a2 * a2 + a2);
    UniPoly qc = quad(a1 * a1 + a1);
    UniPoly qd = quad(a1 * a1 + a2 * a2 + a1 + a2 + one);

    // the six nodes of B (pairwise intersections of the lines)
    const FieldElement ia3 = a3.inv();
    const FieldElement nb1 = a2 * ia3, nb2 = (one + a2) * ia3;
    const FieldElement nc1 = a1 * ia3, nc2 = (one + a1) * ia3;
    const FieldElement nd1 = (a1 + a2) * ia3, nd2 = (one + a1 + a2) * ia3;

    // pair roots must avoid the nodes (evaluated exactly, never solved)
    struct Avoid {
        const UniPoly* q;
        FieldElement at;
        const char* name;
    };
    const Avoid checks[] = {
        {&qb, nb1, "b-roots avoid the B-nodes on {x1=0}"},
        {&qb, nb2, "b-roots avoid the B-nodes on {x1=0}"},
        {&qc, nc1, "c-roots avoid the B-nodes on {x2=0}"},
        {&qc, nc2, "c-roots avoid the B-nodes on {x2=0}"},
        {&qd, nd1, "d-roots avoid the B-nodes on {x1=x2}"},
        {&qd, nd2, "d-roots avoid the B-nodes on {x1=x2}"},
    };
    for (const auto& c : checks)
        if (c.q->eval(c.at).is_zero())
            throw FamilyError("inadmissible parameters", c.name);
    // tangency of a line to Q would create an extra singular point over
    // {Q = B = 0}
    for (const auto* l : {&y1, &y2, &y3, &y4})
        if (detail::line_tangent_to_conic(Q3, *l))
            throw FamilyError("inadmissible parameters", "lines of B stay transverse to Q");

    // assemble F = z^2 Q + B in four variables
    auto lift = [&](const MultiPoly& p) {
        MultiPoly q(&K, 4);
        for (const auto& [m, c] : p.terms()) q.add_term(m, c);
        return q;
    };
    auto z = MultiPoly::variable(K, 4, 3);
    Family fam{z * z * lift(Q3) + lift(B3), {}};
    fam.expect.total_geometric = 14;

    fam.expect.groups.push_back(
        {"projection centre P", {ProjPoint(&K, {0, 0, 0, 1})}, std::nullopt});
    fam.expect.groups.push_back({"nodes of B at z=0",
                                 {ProjPoint(&K, {0, 1, nb1.bits, 0}), ProjPoint(&K, {0, 1, nb2.bits, 0}),
                                  ProjPoint(&K, {1, 0, nc1.bits, 0}), ProjPoint(&K, {1, 0, nc2.bits, 0}),
                                  ProjPoint(&K, {1, 1, nd1.bits, 0}), ProjPoint(&K, {1, 1, nd2.bits, 0})},
                                 std::nullopt});
    fam.expect.groups.push_back(
        {"over the strange point of Q",
         {ProjPoint(&K, {0, 0, 1, (a3 * a3).bits})},
         std::nullopt});

    // quadratic pairs: z above x is sqrt(B(x)/Q(x))
    auto pair_group = [&](const UniPoly& q, std::uint32_t x1v, std::uint32_t x2v,
                          const char* label) {
        ExpectedGroup g{label, {}, std::nullopt};
        UniPoly monic = q.monic();
        for (auto r : K.solve_quadratic(FieldElement{monic.coeff(1), &K},
                                        FieldElement{monic.coeff(0), &K})) {
            std::vector<std::uint32_t> x{x1v, x2v, r.bits};
            const std::uint32_t bq = B3.eval_raw(x);
            const std::uint32_t qq = Q3.eval_raw(x);
            const std::uint32_t zz = K.sqrt_raw(K.div_raw(bq, qq));
            g.points.push_back(ProjPoint(&K, {x1v, x2v, r.bits, zz}));
        }
        fam.expect.groups.push_back(std::move(g));
    };
    pair_group(qb, 0, 1, "pair over {x1=0}");
    pair_group(qc, 1, 0, "pair over {x2=0}");
    pair_group(qd, 1, 1, "pair over {x1=x2}");

    int rational = 0;
    for (const auto& g : fam.expect.groups) rational += static_cast<int>(g.points.size());
    if (rational < 14)
        fam.expect.notes.push_back("some quadratic pairs are irrational over the ambient field");
    return fam;
}

// a3 = u, a1 = a2 = u^2 over the GF(4) subfield: 14 singular points over
// GF(16), 8 over GF(4), 4 over GF(2); b, c, d all satisfy z^2 + z + u^2.
inline Family f16_instance(const FieldCtx& K) {
    const FieldElement u = K.gf4_generator();
    Family fam = inseparable_step4(u * u, u * u, u);
    fam.expect.notes.push_back("pair coordinates satisfy z^2 + z + u^2 = 0");
    return fam;
}

// w^4 + w^2 l(x)^2 + B(x) with l a linear form off the critical scheme of
// B; each critical point of B carries two singular points (w-solutions of
// a separable quadratic in w^2).
inline Family schuett_quartic(const MultiPoly& B, const MultiPoly& ell) {
    const FieldCtx& K = *B.ctx();
    if (B.nvars() != 3 || B.degree() != 4 || !B.is_homogeneous())
        throw std::invalid_argument("schuett construction expects a plane quartic");
    if (ell.nvars() != 3 || ell.degree() != 1 || !ell.is_homogeneous())
        throw std::invalid_argument("schuett construction expects a linear form");
    PlaneLocus crit = critical_points_plane(B);
    if (crit.identically_zero || crit.truncated)
        throw FamilyError("construction needs a finite critical scheme", "C_B finite");
    for (const auto& p : crit.points)
        if (ell.eval_raw(p.raw()) == 0)
            throw FamilyError("critical scheme meets the chosen line", "C_B disjoint from {l=0}");

    auto lift = [&](const MultiPoly& p) {
        MultiPoly q(&K, 4);
        for (const auto& [m, c] : p.terms()) q.add_term(m, c);
        return q;
    };
    auto w = MultiPoly::variable(K, 4, 3);
    auto l4 = lift(ell);
    Family fam{w * w * w * w + w * w * l4 * l4 + lift(B), {}};
    fam.expect.total_geometric = 2 * static_cast<int>(crit.points.size());

    for (const auto& p : crit.points) {
        ExpectedGroup g{"over critical point " + p.str(), {}, std::nullopt};
        // w^4 + w^2 l^2 + B = 0 <=> W^2 + l^2 W + B = 0, w = sqrt(W)
        const FieldElement lv = FieldElement{ell.eval_raw(p.raw()), &K};
        const FieldElement bv = FieldElement{B.eval_raw(p.raw()), &K};
        for (auto W : K.solve_quadratic(lv * lv, bv)) {
            std::vector<std::uint32_t> c = p.raw();
            c.push_back(W.sqrt().bits);
            g.points.push_back(ProjPoint(&K, std::move(c)));
        }
        fam.expect.groups.push_back(std::move(g));
    }
    return fam;
}

inline MultiPoly klein_quartic(const FieldCtx& K) {
    return MultiPoly::parse("x1^3*x2 + x2^3*x3 + x3^3*x1", K, 3);
}

// ---------------------------------------------------------------------------
// Symmetric quartics a1 s1^4 + a2 s1^2 s2 + a3 s1 s3 + a4 s4 + beta s2^2

struct SymmetricFamilySpec {
    FieldElement a1, a2, a3, a4, beta;

    const FieldCtx& ctx() const { return *a1.ctx; }
    bool all_zero() const {
        return a1.is_zero() && a2.is_zero() && a3.is_zero() && a4.is_zero() && beta.is_zero();
    }
    std::string str() const {
        return "(" + a1.str() + ", " + a2.str() + ", " + a3.str() + ", " + a4.str() + ", " +
               beta.str() + ")";
    }
};

inline MultiPoly symmetric_quartic(const SymmetricFamilySpec& s) {
    if (s.all_zero()) throw std::invalid_argument("symmetric spec must not vanish entirely");
    const FieldCtx& K = s.ctx();
    auto s1 = elementary_symmetric(K, 1);
    auto s2 = elementary_symmetric(K, 2);
    auto s3 = elementary_symmetric(K, 3);
    auto s4 = elementary_symmetric(K, 4);
    return (s1 * s1 * s1 * s1).scaled(s.a1) + (s1 * s1 * s2).scaled(s.a2) +
           (s1 * s3).scaled(s.a3) + s4.scaled(s.a4) + (s2 * s2).scaled(s.beta);
}

// The cubic whose roots every singular-point coordinate must satisfy:
// f(w) = w^3 (a3 s1) + w^2 (a2+a3) s1^2 + w (a2 s1^3 + a3 (s3 + s1 s2))
//        + a4 s4, with the s_i evaluated at the point.
inline UniPoly symmetric_fz(const SymmetricFamilySpec& s, const ProjPoint& p) {
    const FieldCtx& K = s.ctx();
    if (p.size() != 4) throw std::invalid_argument("symmetric_fz expects a point of P^3");
    const auto x = p.raw();
    auto ev = [&](int i) { return FieldElement{elementary_symmetric(K, i).eval_raw(x), &K}; };
    const FieldElement s1 = ev(1), s2 = ev(2), s3 = ev(3), s4 = ev(4);
    return UniPoly(&K, {(s.a4 * s4).bits,
                        (s.a2 * s1 * s1 * s1 + s.a3 * (s3 + s1 * s2)).bits,
                        ((s.a2 + s.a3) * s1 * s1).bits,
                        (s.a3 * s1).bits});
}

// Orbit-level classification of Sing(X) for a symmetric quartic.  Each
// candidate orbit has an exact membership test in the coefficients; the
// degeneracy rules flag surfaces that are reducible or singular along a
// curve.  Points are listed when rational over the ambient field.
inline FamilyExpectation classify_symmetric(const SymmetricFamilySpec& s) {
    if (s.all_zero()) throw std::invalid_argument("symmetric spec must not vanish entirely");
    const FieldCtx& K = s.ctx();
    const FieldElement one = K.one(), zero = K.zero();
    const FieldElement a1 = s.a1, a2 = s.a2, a3 = s.a3, a4 = s.a4, be = s.beta;
    FamilyExpectation exp;

    auto flag = [&](bool red, bool inf, const char* why) {
        exp.reducible |= red;
        exp.infinite_singular |= inf;
        exp.notes.push_back(why);
    };

    // degeneracies
    if (a2.is_zero() && a3.is_zero() && a4.is_zero())
        flag(true, true, "perfect square (sqrt(a1) s1^2 + sqrt(beta) s2)^2");
    if (a4.is_zero() && be.is_zero())
        flag(true, true, "s1 divides the equation");
    if (a1.is_zero() && a2.is_zero() && a3.is_zero() && be.is_zero())
        flag(true, true, "the equation is a4 s4, a union of planes");
    if (a3.is_zero() && a4.is_zero() && !exp.infinite_singular)
        flag(false, true, "Sing contains {s1 = s2 = 0}");
    if (a1.is_zero() && a2.is_zero() && a4.is_zero() && !a3.is_zero() && be == a3)
        flag(false, true, "Sing contains the whole (1,1,1,b) curve");
    if (!a2.is_zero() && be.is_zero() && !a3.is_zero()) {
        const FieldElement z = a3 / a2;
        if (a4 == z * z * a2 && (a1 * z * z + a2 * (one + z)).is_zero())
            flag(false, true, "Sing contains the (b,c,1,1) curves of each b+c=z");
    }

    auto orbit_group = [&](const char* label, ProjPoint base) {
        exp.groups.push_back({label, s4_orbit(base), std::nullopt});
    };

    if (be.is_zero()) orbit_group("orbit of (0,0,1,1)", ProjPoint(&K, {0, 0, 1, 1}));
    if (a4.is_zero()) orbit_group("orbit of (1,1,1,1)", ProjPoint(&K, {1, 1, 1, 1}));
    if (a1.is_zero() && a2.is_zero())
        orbit_group("orbit of (0,0,0,1)", ProjPoint(&K, {0, 0, 0, 1}));

    // (1,1,1,b), b != 1: a4 = a2 (1+b)^2 and beta = a1 (1+b)^2 + a2 + a3
    if (!a2.is_zero()) {
        const FieldElement Bv = a4 / a2;
        if (!Bv.is_zero() && a1 * Bv == be + a2 + a3)
            orbit_group("orbit of (1,1,1,b)", ProjPoint(&K, {1, 1, 1, (one + Bv.sqrt()).bits}));
    } else if (!a1.is_zero() && a4.is_zero()) {
        const FieldElement Bv = (be + a3) / a1;
        if (!Bv.is_zero())
            orbit_group("orbit of (1,1,1,b)", ProjPoint(&K, {1, 1, 1, (one + Bv.sqrt()).bits}));
    }

    // (0,0,1,b), b outside {0,1}: a2 = a3 = 0, a1 (1+b)^4 = beta b^2
    if (a2.is_zero() && a3.is_zero() && !a1.is_zero() && !be.is_zero()) {
        // the two roots b, 1/b span one and the same orbit
        auto roots = K.solve_quadratic(be.sqrt() / a1.sqrt(), one);
        if (!roots.empty() && !roots[0].is_zero() && !roots[0].is_one())
            orbit_group("orbit of (0,0,1,b)", ProjPoint(&K, {0, 0, 1, roots[0].bits}));
    }

    if (!a2.is_zero() && !a3.is_zero()) {
        const FieldElement z = a3 / a2;
        if (a4 == z * z * a2) {
            // (0,1,1,z), z outside {0,1}
            if (!z.is_one() && be == a1 * z.pow(4) + a2 * z * z * (one + z))
                orbit_group("orbit of (0,1,1,z)", ProjPoint(&K, {0, 1, 1, z.bits}));
            // (1,1,b,c) with b+c = z, b c = bc from the membership equation
            if (!be.is_zero()) {
                const FieldElement D = a1 * z.pow(4) + a2 * z * z * (one + z);
                const FieldElement bc = one + (D / be).sqrt();
                if (!bc.is_zero() && bc != one + z) {
                    auto roots = K.solve_quadratic(z, bc);
                    if (roots.size() == 2)
                        orbit_group("orbit of (1,1,b,c)",
                                    ProjPoint(&K, {1, 1, roots[0].bits, roots[1].bits}));
                }
            }
        }
    }

    std::optional<int> geometric;
    if (!exp.degenerate()) {
        // over the closure every listed quadratic splits; count orbits by size
        geometric = exp.total();
        // add the sizes of orbits dropped for irrationality
        if (a2.is_zero() && a3.is_zero() && !a1.is_zero() && !be.is_zero() &&
            K.solve_quadratic(be.sqrt() / a1.sqrt(), one).empty())
            *geometric += 12;
        if (!a2.is_zero() && !a3.is_zero() && !be.is_zero()) {
            const FieldElement z = a3 / a2;
            if (a4 == z * z * a2) {
                const FieldElement D = a1 * z.pow(4) + a2 * z * z * (one + z);
                const FieldElement bc = one + (D / be).sqrt();
                if (!bc.is_zero() && bc != one + z && K.solve_quadratic(z, bc).empty())
                    *geometric += 12;
            }
        }
    }
    exp.total_geometric = geometric;
    return exp;
}

inline SymmetricFamilySpec pencil_spec(const FieldCtx& K, FieldElement c) {
    return {K.zero(), K.zero(), c, K.one(), K.zero()};
}

inline SymmetricFamilySpec d4_spec(const FieldCtx& K, FieldElement beta) {
    return {K.zero(), K.zero(), K.zero(), K.one(), beta};
}

// c s1 s3 + s4; ten nodes for every c != 0.
inline Family pencil_quartic(const FieldCtx& K, FieldElement c) {
    auto spec = pencil_spec(K, c);
    Family fam{symmetric_quartic(spec), classify_symmetric(spec)};
    for (auto& g : fam.expect.groups) g.cone = ConicKind::SmoothConic;
    return fam;
}

// s4 + beta s2^2; four uniplanar double points (type D4) for beta != 0.
inline Family d4_quartic(const FieldCtx& K, FieldElement beta) {
    auto spec = d4_spec(K, beta);
    Family fam{symmetric_quartic(spec), classify_symmetric(spec)};
    if (!beta.is_zero())
        for (auto& g : fam.expect.groups) g.cone = ConicKind::DoubleLine;
    return fam;
}

}  // namespace charq
