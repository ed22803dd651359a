#pragma once

// Singular-locus machinery: enumeration of Sing(X) over P^3(GF(2^m)) by
// chart-stratified univariate slicing, the brute-force validation oracle,
// plane critical loci, tangent-cone classification, truncated-quotient
// local intersection multiplicities, the Gauss-plane test and the degree
// formula ledger.
//
// Enumeration strategy (chart p = 0..3): points whose first nonzero
// coordinate is the p-th, written (0,..,0,1,...,T) with T the last
// coordinate.  Every projective point lands in exactly one chart, so no
// cross-chart deduplication is needed.  Per slice the system {F, partials}
// reduces to univariates in T; an iterated gcd drops out almost
// immediately on non-singular slices.  For even degree the partial with
// respect to the pinned coordinate is dependent through the Euler identity
// sum x_i F_i = deg(F) * F = 0 and is omitted; F itself is always checked,
// since in char 2 the partials never imply it.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "geometry.hpp"
#include "linalg.hpp"
#include "mpoly.hpp"
#include "taylor.hpp"
#include "unipoly.hpp"

namespace charq {

struct EnumOptions {
    int subfield = 0;          // 0 = full field, else a divisor of m
    std::size_t cap = SIZE_MAX;
    int threads = 0;           // 0 = hardware default (clamped to 8)
    std::uint64_t seed = Rng::kDefaultSeed;
};

struct EnumResult {
    std::vector<ProjPoint> points;
    bool truncated = false;
};

namespace detail {

// One polynomial pre-sliced for a chart: for fixed values of the free
// variables, the T-coefficients come from small bivariate evaluations.
struct SlicedPoly {
    struct Term {
        std::uint8_t ea, eb;
        std::uint32_t c;
    };
    int tdeg = 0;
    std::vector<std::vector<Term>> coeff;  // coeff[j] -> coefficient of T^j

    // chart: coords before `pin` are zero, coords[pin] = 1, free positions
    // fa and fb (negative when absent), T at position tpos.
    static SlicedPoly build(const MultiPoly& g, int pin, int fa, int fb, int tpos) {
        SlicedPoly out;
        auto alive = [&](const Monomial& m) {
            for (int i = 0; i < pin; ++i)
                if (m.e[i] != 0) return false;
            return true;
        };
        for (const auto& [m, c] : g.terms())
            if (alive(m)) out.tdeg = std::max<int>(out.tdeg, m.e[tpos]);
        out.coeff.assign(out.tdeg + 1, {});
        for (const auto& [m, c] : g.terms()) {
            if (!alive(m)) continue;
            Term t;
            t.ea = (fa >= 0) ? m.e[fa] : 0;
            t.eb = (fb >= 0) ? m.e[fb] : 0;
            t.c = c;
            out.coeff[m.e[tpos]].push_back(t);
        }
        return out;
    }

    // Evaluate the T-coefficients at the free values; dst holds tdeg+1
    // entries, returns the trimmed degree (-1 when identically zero).
    int eval(const FieldCtx& F, const std::uint32_t* pa, const std::uint32_t* pb,
             std::uint32_t* dst) const {
        for (int j = 0; j <= tdeg; ++j) {
            std::uint32_t acc = 0;
            for (const Term& t : coeff[j]) {
                std::uint32_t v = t.c;
                if (t.ea) v = F.mul_raw(v, pa[t.ea]);
                if (t.eb) v = F.mul_raw(v, pb[t.eb]);
                acc ^= v;
            }
            dst[j] = acc;
        }
        int d = tdeg;
        while (d >= 0 && dst[d] == 0) --d;
        return d;
    }
};

inline void power_table(const FieldCtx& F, std::uint32_t x, int maxdeg, std::uint32_t* pw) {
    pw[0] = 1;
    for (int d = 1; d <= maxdeg; ++d) pw[d] = F.mul_raw(pw[d - 1], x);
}

// In-place Euclid on stack buffers (degrees <= 15); result lands in `a`,
// returned value is its degree.  Not made monic; only the degree and root
// set matter to callers.
inline int stack_gcd(const FieldCtx& F, std::uint32_t* a, int da, std::uint32_t* b, int db) {
    std::uint32_t* x = a;
    std::uint32_t* y = b;
    int dx = da, dy = db;
    while (dy >= 0) {
        const std::uint32_t inv = F.inv_raw(y[dy]);
        while (dx >= dy) {
            const std::uint32_t c = F.mul_raw(x[dx], inv);
            for (int i = 0; i < dy; ++i) x[dx - dy + i] ^= F.mul_raw(c, y[i]);
            x[dx] = 0;
            while (dx >= 0 && x[dx] == 0) --dx;
        }
        std::swap(x, y);
        std::swap(dx, dy);
    }
    if (x != a)
        for (int i = 0; i <= dx; ++i) a[i] = x[i];
    return dx;
}

}  // namespace detail

// Chart-stratified scanner for the common zeros of per-chart polynomial
// systems over P^n(GF(2^k)), n = 2 or 3.
class SliceScanner {
public:
    SliceScanner(const FieldCtx& F, const std::vector<MultiPoly> system_per_chart[], int nvars)
        : F_(F), nvars_(nvars) {
        for (int p = 0; p < nvars; ++p) charts_[p] = system_per_chart[p];
    }

    EnumResult run(const EnumOptions& opt) const {
        const int k = opt.subfield == 0 ? F_.degree() : opt.subfield;
        if (F_.degree() % k != 0) throw std::invalid_argument("subfield degree must divide m");
        const std::vector<std::uint32_t> sub = F_.subfield_elements(k);
        const std::size_t budget =
            opt.cap > SIZE_MAX - 1024 ? SIZE_MAX : opt.cap + 64;

        EnumResult res;
        std::vector<std::array<std::uint32_t, 4>> raw;
        std::atomic<bool> over{false};

        if (nvars_ == 4) {
            scan_2d(0, sub, k, opt, budget, raw, over);
            scan_line(1, sub, k, budget, raw, over);
            scan_line(2, sub, k, budget, raw, over);
            point_check(3, raw);
        } else {
            scan_line(0, sub, k, budget, raw, over);
            scan_line(1, sub, k, budget, raw, over);
            point_check(2, raw);
        }

        std::sort(raw.begin(), raw.end());
        raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        if (raw.size() > opt.cap) {
            raw.resize(opt.cap);
            res.truncated = true;
        }
        if (over.load()) res.truncated = true;
        res.points.reserve(raw.size());
        for (const auto& c : raw)
            res.points.emplace_back(&F_, std::vector<std::uint32_t>(c.begin(), c.begin() + nvars_));
        std::sort(res.points.begin(), res.points.end());
        return res;
    }

private:
    // Shared slice core on stack buffers: accumulate the gcd of the
    // evaluated system; deg 0 kills the slice, "no constraint at all"
    // means the whole T-line solves the system.
    struct SliceOutcome {
        int gdeg = -2;  // -2 dead, -1 whole line, >= 0 gcd degree in gbuf
        std::uint32_t gbuf[16];
    };

    void slice_core(const std::vector<detail::SlicedPoly>& sliced, const std::uint32_t* pa,
                    const std::uint32_t* pb, SliceOutcome& out) const {
        std::uint32_t tmp[16];
        bool have = false;
        int dg = -1;
        for (const auto& sp : sliced) {
            const int dt = sp.eval(F_, pa, pb, tmp);
            if (dt < 0) continue;  // vanishes identically on this slice
            if (dt == 0) { out.gdeg = -2; return; }  // nonzero constant
            if (!have) {
                for (int i = 0; i <= dt; ++i) out.gbuf[i] = tmp[i];
                dg = dt;
                have = true;
            } else {
                dg = detail::stack_gcd(F_, out.gbuf, dg, tmp, dt);
                if (dg == 0) { out.gdeg = -2; return; }
            }
        }
        out.gdeg = have ? dg : -1;
    }

    void roots_of_gbuf(const SliceOutcome& oc, int k, std::vector<std::uint32_t>& out) const {
        UniPoly g(&F_, std::vector<std::uint32_t>(oc.gbuf, oc.gbuf + oc.gdeg + 1));
        Rng rng;  // per-slice deterministic splitting
        for (auto r : univariate_roots(g, rng))
            if (k == F_.degree() || F_.in_subfield(r.bits, k)) out.push_back(r.bits);
    }

    void scan_2d(int p, const std::vector<std::uint32_t>& sub, int k, const EnumOptions& opt,
                 std::size_t budget, std::vector<std::array<std::uint32_t, 4>>& raw,
                 std::atomic<bool>& over) const {
        const auto& sys = charts_[p];
        if (sys.empty()) return;
        std::vector<detail::SlicedPoly> sliced;
        for (const auto& g : sys) sliced.push_back(detail::SlicedPoly::build(g, p, 1, 2, 3));

        int nthreads = opt.threads > 0
                           ? opt.threads
                           : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
        nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(sub.size())));
        std::vector<std::vector<std::array<std::uint32_t, 4>>> hits(nthreads);
        std::atomic<std::size_t> used{0};

        auto worker = [&](int tid) {
            std::uint32_t pa[9], pb[9];
            SliceOutcome oc;
            std::vector<std::uint32_t> roots;
            for (std::size_t ia = tid; ia < sub.size(); ia += nthreads) {
                if (over.load(std::memory_order_relaxed)) return;
                detail::power_table(F_, sub[ia], 8, pa);
                for (std::size_t ib = 0; ib < sub.size(); ++ib) {
                    detail::power_table(F_, sub[ib], 8, pb);
                    slice_core(sliced, pa, pb, oc);
                    if (oc.gdeg == -2) continue;
                    if (oc.gdeg == -1) {
                        // whole T-line solves the system
                        for (auto v : sub) {
                            hits[tid].push_back({1, sub[ia], sub[ib], v});
                            if (used.fetch_add(1) > budget) { over = true; return; }
                        }
                        continue;
                    }
                    if (oc.gdeg < 1) continue;
                    roots.clear();
                    roots_of_gbuf(oc, k, roots);
                    for (auto r : roots) {
                        hits[tid].push_back({1, sub[ia], sub[ib], r});
                        if (used.fetch_add(1) > budget) { over = true; return; }
                    }
                }
            }
        };
        if (nthreads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(nthreads);
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        for (auto& h : hits)
            raw.insert(raw.end(), h.begin(), h.end());
    }

    // 1-dimensional slice family: chart p with one free coordinate (the one
    // right after the pin for surfaces, position p+1) and T last.  Also
    // covers the 0-dimensional chart where no free coordinate remains.
    void scan_line(int p, const std::vector<std::uint32_t>& sub, int k, std::size_t budget,
                   std::vector<std::array<std::uint32_t, 4>>& raw, std::atomic<bool>& over) const {
        const auto& sys = charts_[p];
        if (sys.empty()) return;
        const int tpos = nvars_ - 1;
        const int fa = (p + 1 < tpos) ? p + 1 : -1;
        std::vector<detail::SlicedPoly> sliced;
        for (const auto& g : sys) sliced.push_back(detail::SlicedPoly::build(g, p, fa, -1, tpos));
        std::uint32_t pa[9] = {1}, pb[9] = {1};
        SliceOutcome oc;
        std::vector<std::uint32_t> roots;
        const std::size_t nslices = (fa >= 0) ? sub.size() : 1;
        for (std::size_t ia = 0; ia < nslices; ++ia) {
            if (fa >= 0) detail::power_table(F_, sub[ia], 8, pa);
            slice_core(sliced, pa, pb, oc);
            if (oc.gdeg == -2) continue;
            std::array<std::uint32_t, 4> base{0, 0, 0, 0};
            base[p] = 1;
            if (fa >= 0) base[fa] = sub[ia];
            if (oc.gdeg == -1) {
                for (auto v : sub) {
                    auto c = base;
                    c[tpos] = v;
                    raw.push_back(c);
                    if (raw.size() > budget) { over = true; return; }
                }
                continue;
            }
            if (oc.gdeg < 1) continue;
            roots.clear();
            roots_of_gbuf(oc, k, roots);
            for (auto r : roots) {
                auto c = base;
                c[tpos] = r;
                raw.push_back(c);
                if (raw.size() > budget) { over = true; return; }
            }
        }
    }

    void point_check(int p, std::vector<std::array<std::uint32_t, 4>>& raw) const {
        const auto& sys = charts_[p];
        if (sys.empty()) return;
        std::vector<std::uint32_t> pt(nvars_, 0);
        pt[p] = 1;
        for (const auto& g : sys)
            if (g.eval_raw(pt) != 0) return;
        std::array<std::uint32_t, 4> c{0, 0, 0, 0};
        c[p] = 1;
        raw.push_back(c);
    }

    const FieldCtx& F_;
    int nvars_;
    std::vector<MultiPoly> charts_[4];
};

// ---------------------------------------------------------------------------
// Surface singular locus

inline EnumResult enumerate_singular(const MultiPoly& F, const EnumOptions& opt = {}) {
    if (F.is_zero() || !F.is_homogeneous())
        throw std::invalid_argument("singular locus needs a nonzero homogeneous form");
    if (F.nvars() != 4) throw std::invalid_argument("surface enumeration expects 4 variables");
    const bool even = (F.degree() % 2 == 0);
    std::vector<MultiPoly> parts;
    parts.reserve(4);
    for (int i = 0; i < 4; ++i) parts.push_back(F.partial(i));
    std::vector<MultiPoly> charts[4];
    for (int p = 0; p < 4; ++p) {
        charts[p].push_back(F);  // never implied by the partials in char 2
        for (int i = 0; i < 4; ++i) {
            if (even && i == p) continue;  // Euler-dependent on this chart
            charts[p].push_back(parts[i]);
        }
    }
    return SliceScanner(*F.ctx(), charts, 4).run(opt);
}

inline std::vector<ProjPoint> singular_points(const MultiPoly& F, const EnumOptions& opt = {}) {
    return enumerate_singular(F, opt).points;
}

// Full scan of P^3(GF(2^k)) checking F and all four partials directly.
// Validation oracle for the sliced enumeration; 2^k <= 16.
inline std::vector<ProjPoint> brute_force_oracle(const MultiPoly& F, int k) {
    if (k < 1 || (1 << k) > 16) throw std::invalid_argument("oracle expects 2^k <= 16");
    const FieldCtx& K = *F.ctx();
    if (K.degree() % k != 0) throw std::invalid_argument("k must divide m");
    std::vector<MultiPoly> sys{F};
    for (int i = 0; i < 4; ++i) sys.push_back(F.partial(i));
    const auto sub = K.subfield_elements(k);
    std::vector<ProjPoint> out;
    for (int p = 0; p < 4; ++p) {
        std::vector<std::uint32_t> c(4, 0);
        c[p] = 1;
        const int nfree = 3 - p;
        std::vector<std::size_t> idx(nfree, 0);
        for (;;) {
            for (int i = 0; i < nfree; ++i) c[p + 1 + i] = sub[idx[i]];
            bool sing = true;
            for (const auto& g : sys)
                if (g.eval_raw(c) != 0) { sing = false; break; }
            if (sing) out.emplace_back(&K, c);
            int i = nfree - 1;
            while (i >= 0 && ++idx[i] == sub.size()) idx[i--] = 0;
            if (i < 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Plane loci

struct PlaneLocus {
    std::vector<ProjPoint> points;
    bool truncated = false;
    bool identically_zero = false;  // the defining system vanishes everywhere
};

// Common zeros in P^2(GF(2^m)) of the three partials of B (the critical
// scheme C_B).  A square B has identically vanishing gradient; that case
// is flagged instead of listing the whole plane.
inline PlaneLocus critical_points_plane(const MultiPoly& B, const EnumOptions& opt = {}) {
    if (B.is_zero()) throw std::invalid_argument("critical locus of the zero polynomial");
    if (B.nvars() != 3) throw std::invalid_argument("critical_points_plane expects 3 variables");
    std::vector<MultiPoly> sys;
    bool all_zero = true;
    for (int i = 0; i < 3; ++i) {
        sys.push_back(B.partial(i));
        if (!sys.back().is_zero()) all_zero = false;
    }
    PlaneLocus out;
    if (all_zero) {
        out.identically_zero = true;
        return out;
    }
    std::vector<MultiPoly> charts[4] = {sys, sys, sys, {}};
    EnumResult r = SliceScanner(*B.ctx(), charts, 3).run(opt);
    out.points = std::move(r.points);
    out.truncated = r.truncated;
    return out;
}

inline PlaneLocus common_zeros_plane(const std::vector<MultiPoly>& polys,
                                     const EnumOptions& opt = {}) {
    if (polys.empty()) throw std::invalid_argument("common zeros of an empty system");
    bool all_zero = true;
    for (const auto& g : polys) {
        if (g.nvars() != 3) throw std::invalid_argument("common_zeros_plane expects 3 variables");
        if (!g.is_zero()) all_zero = false;
    }
    PlaneLocus out;
    if (all_zero) {
        out.identically_zero = true;
        return out;
    }
    std::vector<MultiPoly> charts[4] = {polys, polys, polys, {}};
    EnumResult r = SliceScanner(*polys[0].ctx(), charts, 3).run(opt);
    out.points = std::move(r.points);
    out.truncated = r.truncated;
    return out;
}

// ---------------------------------------------------------------------------
// Local intersection multiplicity (F, F1, F2)_P

struct LocalMult {
    int value = -1;
    int stab_degree = -1;
    bool conclusive = false;
};

namespace detail {

inline int monomial_rank3(int a, int b, int c) {
    const int d = a + b + c;
    int off = 0;
    for (int aa = d; aa > a; --aa) off += d - aa + 1;
    off += d - a - b;
    return d * (d + 1) * (d + 2) / 6 + off;
}

inline int count_monomials3(int below_degree) {
    return below_degree * (below_degree + 1) * (below_degree + 2) / 6;
}

// dim of K[x,y,z]_{<D} modulo degree-D truncations of monomial multiples
// of the generators; equals dim O/(I + m^D).
inline int truncated_quotient_dim(const FieldCtx& K, const std::vector<MultiPoly>& gens, int D) {
    const int ncols = count_monomials3(D);
    RowReducer red(&K, ncols);
    std::vector<std::uint32_t> row;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (int da = 0; da < D; ++da)
            for (int db = 0; da + db < D; ++db)
                for (int dc = 0; da + db + dc < D; ++dc) {
                    row.assign(ncols, 0);
                    bool any = false;
                    for (const auto& [m, c] : g.terms()) {
                        const int a = m.e[0] + da, b = m.e[1] + db, cc = m.e[2] + dc;
                        if (a + b + cc >= D) continue;
                        row[monomial_rank3(a, b, cc)] ^= c;
                        any = true;
                    }
                    if (any) red.add_row(row);
                }
    }
    return ncols - red.rank();
}

inline Matrix random_gl4(const FieldCtx& K, Rng& rng) {
    for (;;) {
        Matrix A(&K, 4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) A.at(i, j) = rng.element_bits(K);
        if (A.invertible()) return A;
    }
}

}  // namespace detail

// dim O_{P^3,P} / (F, F1, F2) with the two partials taken in random
// coordinates drawn from the seed.  Truncation dimensions dim(D) are
// nondecreasing in D and two consecutive equal values certify
// stabilization; no stabilization by dmax reports inconclusive.
inline LocalMult local_multiplicity(const MultiPoly& F, const ProjPoint& P,
                                    std::uint64_t seed = Rng::kDefaultSeed, int dmax = 12) {
    const FieldCtx& K = *F.ctx();
    if (!is_singular_at(F, P))
        throw std::invalid_argument("local multiplicity is defined at singular points only");
    Rng rng(seed);
    Matrix A = detail::random_gl4(K, rng);
    MultiPoly G = F.substitute(A);
    ProjPoint Pa(&K, A.inverse().apply_row(P.raw()));

    // sparse move of Pa to e4, as in the taylor development
    int pivot = 0;
    while (Pa.raw()[pivot] == 0) ++pivot;
    Matrix S(&K, 4, 4);
    int r = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == pivot) continue;
        S.at(r, i) = 1;
        ++r;
    }
    for (int j = 0; j < 4; ++j) S.at(3, j) = Pa.raw()[j];
    MultiPoly H = G.substitute(S);

    // dehomogenize at x4 = 1
    MultiPoly f(&K, 3);
    for (const auto& [m, c] : H.terms()) {
        Monomial h;
        for (int i = 0; i < 3; ++i) h.e[i] = m.e[i];
        f.add_term(h, c);
    }
    std::vector<MultiPoly> gens{f, f.partial(0), f.partial(1)};

    LocalMult out;
    int prev = -1;
    for (int D = 2; D <= dmax; ++D) {
        const int dim = detail::truncated_quotient_dim(K, gens, D);
        if (dim == prev) {
            out.value = dim;
            out.stab_degree = D - 1;
            out.conclusive = true;
            return out;
        }
        prev = dim;
    }
    out.value = prev;
    return out;
}

// ---------------------------------------------------------------------------
// Point classification and reports

struct SingularPointRecord {
    ProjPoint point;
    int mult = 2;
    std::optional<ConicKind> cone;  // set when mult == 2
    LocalMult local;
    int defdeg = 1;
};

inline SingularPointRecord classify_point(const MultiPoly& F, const ProjPoint& P,
                                          std::uint64_t seed = Rng::kDefaultSeed, int dmax = 12) {
    SingularPointRecord rec;
    rec.point = P;
    rec.defdeg = P.defdeg();
    TaylorDecomposition dev = taylor_at_singular_point(F, P);
    rec.mult = dev.multiplicity();
    if (rec.mult == 2) rec.cone = conic_normal_form(dev.parts[2]).kind;
    // a fresh coordinate change can rescue a non-transversal draw; after
    // three inconclusive attempts the record stays inconclusive
    for (int attempt = 0; attempt < 3; ++attempt) {
        rec.local = local_multiplicity(F, P, seed + attempt, dmax);
        if (rec.local.conclusive) break;
    }
    return rec;
}

// True iff the Taylor development at a double point has G identically
// zero, i.e. projection from P is an inseparable double cover of P^2.
inline bool is_inseparable_projection(const MultiPoly& F, const ProjPoint& P) {
    TaylorDecomposition dev = taylor_at_singular_point(F, P);
    if (dev.multiplicity() != 2)
        throw std::invalid_argument("inseparability test needs a double point");
    return dev.parts[3].is_zero();
}

struct GaussPlaneResult {
    bool planar = false;
    std::optional<std::array<FieldElement, 4>> witness;
};

// Searches for a constant vector v with sum v_i F_i == 0 as polynomials;
// equivalently the Gauss image lies in a plane, equivalently some variable
// occurs only with even exponents after a coordinate change.
inline GaussPlaneResult gauss_plane_test(const MultiPoly& F) {
    if (F.nvars() != 4 || F.degree() != 4 || !F.is_homogeneous())
        throw std::invalid_argument("gauss plane test expects a quartic surface");
    const FieldCtx& K = *F.ctx();
    std::vector<MultiPoly> parts;
    for (int i = 0; i < 4; ++i) parts.push_back(F.partial(i));
    std::map<Monomial, int, TermOrder> cols;
    for (const auto& g : parts)
        for (const auto& [m, c] : g.terms())
            if (!cols.count(m)) {
                const int n = static_cast<int>(cols.size());
                cols[m] = n;
            }
    const int ncols = static_cast<int>(cols.size());
    // rows [coeffs | I4]; a vanishing combination shows up as a zero row
    std::vector<std::vector<std::uint32_t>> rows(4, std::vector<std::uint32_t>(ncols + 4, 0));
    for (int i = 0; i < 4; ++i) {
        for (const auto& [m, c] : parts[i].terms()) rows[i][cols[m]] = c;
        rows[i][ncols + i] = 1;
    }
    int rr = 0;
    for (int j = 0; j < ncols && rr < 4; ++j) {
        int piv = -1;
        for (int i = rr; i < 4; ++i)
            if (rows[i][j] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[rr], rows[piv]);
        const std::uint32_t inv = K.inv_raw(rows[rr][j]);
        for (auto& x : rows[rr]) x = K.mul_raw(x, inv);
        for (int i = 0; i < 4; ++i) {
            if (i == rr || rows[i][j] == 0) continue;
            const std::uint32_t fct = rows[i][j];
            for (int t = 0; t < ncols + 4; ++t) rows[i][t] ^= K.mul_raw(fct, rows[rr][t]);
        }
        ++rr;
    }
    GaussPlaneResult out;
    for (int i = 0; i < 4; ++i) {
        bool zero = true;
        for (int j = 0; j < ncols; ++j)
            if (rows[i][j] != 0) { zero = false; break; }
        if (!zero) continue;
        std::array<FieldElement, 4> w{K.zero(), K.zero(), K.zero(), K.zero()};
        bool nontrivial = false;
        for (int t = 0; t < 4; ++t) {
            w[t] = FieldElement{rows[i][ncols + t], &K};
            if (rows[i][ncols + t] != 0) nontrivial = true;
        }
        if (nontrivial) {
            out.planar = true;
            out.witness = w;
            return out;
        }
    }
    return out;
}

enum class Normality { ProbablyNormal, NonNormalDetected, Inconclusive };

inline const char* normality_name(Normality n) {
    switch (n) {
        case Normality::ProbablyNormal: return "probably-normal";
        case Normality::NonNormalDetected: return "non-normal-detected";
        case Normality::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace detail {

// Shared non-constant factor of F and all partials along random lines:
// catches non-reduced equations (gcd over the field still sees conjugate
// common roots).  Two agreeing lines out of three call it detected.
inline bool common_factor_on_lines(const MultiPoly& F, Rng& rng) {
    const FieldCtx& K = *F.ctx();
    const int n = F.nvars();
    int detections = 0;
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<std::uint32_t> p0(n), p1(n);
        for (int i = 0; i < n; ++i) {
            p0[i] = rng.element_bits(K);
            p1[i] = rng.element_bits(K);
        }
        UniPoly g = F.restrict_to_line(p0, p1);
        if (g.is_zero()) { ++detections; continue; }
        bool trivial = false;
        for (int i = 0; i < n && !trivial; ++i) {
            UniPoly fi = F.partial(i).restrict_to_line(p0, p1);
            if (fi.is_zero()) continue;
            g = univariate_gcd(g, fi);
            if (g.degree() == 0) trivial = true;
        }
        if (!trivial && g.degree() >= 1) ++detections;
    }
    return detections >= 2;
}

}  // namespace detail

// Heuristic only; it never gates the enumeration.  Detection order: square
// equation (all partials vanish identically), shared factor along random
// lines, rational point count beyond q/2, and finally stabilization of the
// counts along the subfield chain GF(2), GF(4), GF(16), full field.
// Subfield-restricted scans can detect trouble but never certify
// probably-normal; the chain argument needs the full-field count.
inline Normality normality_heuristic(const MultiPoly& F, const EnumResult& enume,
                                     const std::map<int, int>& by_defdeg, int scan_degree,
                                     std::uint64_t seed = Rng::kDefaultSeed) {
    const FieldCtx& K = *F.ctx();
    bool all_partials_zero = true;
    for (int i = 0; i < F.nvars(); ++i)
        if (!F.partial(i).is_zero()) { all_partials_zero = false; break; }
    if (all_partials_zero) return Normality::NonNormalDetected;
    Rng rng(seed);
    if (detail::common_factor_on_lines(F, rng)) return Normality::NonNormalDetected;
    if (enume.truncated || enume.points.size() > K.order() / 2)
        return Normality::NonNormalDetected;
    if (scan_degree != K.degree()) return Normality::Inconclusive;
    auto count_upto = [&](int k) {
        int c = 0;
        for (const auto& [d, n] : by_defdeg)
            if (k % d == 0) c += n;
        return c;
    };
    int prev_level = 0;
    for (int k : {4, 2, 1})
        if (k < scan_degree && scan_degree % k == 0) { prev_level = k; break; }
    if (prev_level > 0 && count_upto(prev_level) == static_cast<int>(enume.points.size()))
        return Normality::ProbablyNormal;
    return Normality::Inconclusive;
}

struct AnalyzeOptions {
    std::uint64_t seed = Rng::kDefaultSeed;
    int dmax = 12;
    int threads = 0;
    int subfield = 0;  // restrict the scan; 0 = full field
    bool classify = true;
};

struct SingularReport {
    std::string surface;
    std::string field;
    int scan_degree = 0;  // subfield the scan covered (m when full)
    std::vector<SingularPointRecord> records;
    int total = 0;
    bool truncated = false;
    std::map<int, int> by_defdeg;
    std::optional<int> degree_residual;  // 36 - sum, quartics with conclusive locals
    bool residual_bound_ok = true;       // residual >= 3 unless the Gauss image is planar
    bool gauss_plane = false;
    std::optional<std::array<FieldElement, 4>> witness;
    Normality normality = Normality::Inconclusive;
};

inline SingularReport analyze_surface(const MultiPoly& F, const AnalyzeOptions& opt = {}) {
    const FieldCtx& K = *F.ctx();
    SingularReport rep;
    rep.surface = F.str();
    rep.field = K.spec_string();
    rep.scan_degree = opt.subfield == 0 ? K.degree() : opt.subfield;

    EnumOptions eopt;
    eopt.threads = opt.threads;
    eopt.subfield = opt.subfield;
    eopt.seed = opt.seed;
    eopt.cap = K.order() / 2 + 1;  // past q/2 the surface cannot be normal
    EnumResult enume = enumerate_singular(F, eopt);
    rep.truncated = enume.truncated;
    rep.total = static_cast<int>(enume.points.size());
    for (const auto& p : enume.points) ++rep.by_defdeg[p.defdeg()];

    if (opt.classify && !enume.truncated) {
        rep.records.reserve(enume.points.size());
        for (const auto& p : enume.points)
            rep.records.push_back(classify_point(F, p, opt.seed, opt.dmax));
    }

    if (F.degree() == 4) {
        GaussPlaneResult gp = gauss_plane_test(F);
        rep.gauss_plane = gp.planar;
        rep.witness = gp.witness;
    }

    if (F.degree() == 4 && !enume.truncated && opt.classify) {
        bool all_conclusive = true;
        int sum = 0;
        for (const auto& r : rep.records) {
            if (!r.local.conclusive) all_conclusive = false;
            else sum += r.local.value;
        }
        if (all_conclusive) {
            rep.degree_residual = 36 - sum;
            if (!rep.gauss_plane && *rep.degree_residual < 3) rep.residual_bound_ok = false;
        }
    }

    rep.normality = normality_heuristic(F, enume, rep.by_defdeg, rep.scan_degree, opt.seed);
    return rep;
}

}  // namespace charq
