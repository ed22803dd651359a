#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "charq/singular.hpp"

using namespace charq;

namespace {

MultiPoly rand_quartic(const FieldCtx& F, Rng& rng, int coeff_subfield) {
    const auto sub = F.subfield_elements(coeff_subfield);
    MultiPoly p(&F, 4);
    std::vector<int> e(4, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == 3) {
            e[3] = left;
            Monomial m;
            for (int j = 0; j < 4; ++j) m.e[j] = static_cast<std::uint8_t>(e[j]);
            p.add_term(m, sub[rng.eng() % sub.size()]);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, 4);
    return p;
}

}  // namespace

TEST_CASE("slice enumeration agrees with the brute-force oracle") {
    FieldCtx F(12);
    Rng rng(101);
    int nonempty = 0;
    for (int t = 0; t < 60; ++t) {
        auto Fq = rand_quartic(F, rng, t % 2 ? 1 : 2);
        if (Fq.is_zero()) continue;
        for (int k : {1, 2}) {
            EnumOptions opt;
            opt.subfield = k;
            auto fast = singular_points(Fq, opt);
            auto slow = brute_force_oracle(Fq, k);
            REQUIRE(fast == slow);
            if (!slow.empty()) ++nonempty;
        }
    }
    CHECK(nonempty > 10);  // the sample exercises genuinely singular cases
}

TEST_CASE("cayley cubic: the four coordinate points, all nodes") {
    FieldCtx F(12);
    auto cayley = elementary_symmetric(F, 3);
    auto pts = singular_points(cayley);
    REQUIRE(pts.size() == 4);
    for (int i = 0; i < 4; ++i) {
        std::vector<std::uint32_t> c(4, 0);
        c[i] = 1;
        CHECK(std::find(pts.begin(), pts.end(), ProjPoint(&F, c)) != pts.end());
    }
    // odd degree exercises the all-partials chart path; cross-check oracle
    CHECK(brute_force_oracle(cayley, 4) == singular_points(cayley, {.subfield = 4}));
    // tangent cone at each point is the smooth conic x1x2+x1x3+x2x3
    for (const auto& p : pts) {
        auto dev = taylor_at_singular_point(cayley, p);
        CHECK(dev.multiplicity() == 2);
        CHECK(dev.parts[2] == MultiPoly::parse("x1*x2 + x1*x3 + x2*x3", F, 3));
        CHECK(conic_normal_form(dev.parts[2]).kind == ConicKind::SmoothConic);
    }
}

TEST_CASE("a smooth quartic has no singular points over the ambient field") {
    FieldCtx F(12);
    // pinned after checking with the enumerator; the diagonal-plus-sigma4
    // classic is NOT smooth in char 2 (it picks up (0,0,1,1) and friends)
    auto Fq = MultiPoly::parse("x1^3*x2 + x2^3*x3 + x3^4 + z^3*x1 + z^4", F, 4);
    CHECK(singular_points(Fq).empty());
    CHECK(brute_force_oracle(Fq, 4).empty());
    auto bad = MultiPoly::parse("x1^4 + x2^4 + x3^4 + z^4 + x1*x2*x3*z", F, 4);
    CHECK(is_singular_at(bad, ProjPoint(&F, {0, 0, 1, 1})));
}

TEST_CASE("enumeration commutes with substitution") {
    FieldCtx F(12);
    Rng rng(7);
    auto Fq = elementary_symmetric(F, 1) * elementary_symmetric(F, 3) +
              elementary_symmetric(F, 4);
    auto base = singular_points(Fq);
    for (int t = 0; t < 3; ++t) {
        Matrix M = detail::random_gl4(F, rng);
        auto moved = singular_points(Fq.substitute(M));
        // Sing(F o M) = image of Sing(F) under row action of M^(-1)
        Matrix Minv = M.inverse();
        std::vector<ProjPoint> expect;
        for (const auto& p : base)
            expect.emplace_back(&F, Minv.apply_row(p.raw()));
        std::sort(expect.begin(), expect.end());
        REQUIRE(moved == expect);
    }
}

TEST_CASE("S4-symmetric surfaces have orbit-closed singular sets") {
    FieldCtx F(12);
    auto u = F.gf4_generator();
    auto Fq = elementary_symmetric(F, 4) +
              (elementary_symmetric(F, 2) * elementary_symmetric(F, 2)).scaled(u);
    auto pts = singular_points(Fq);
    std::vector<ProjPoint> closure;
    for (const auto& p : pts)
        for (const auto& q : s4_orbit(p)) closure.push_back(q);
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    CHECK(closure == pts);
}

TEST_CASE("enumeration is deterministic across thread counts") {
    FieldCtx F(12);
    auto Fq = elementary_symmetric(F, 1) * elementary_symmetric(F, 3) +
              elementary_symmetric(F, 4);
    EnumOptions one;
    one.threads = 1;
    EnumOptions two;
    two.threads = 2;
    CHECK(singular_points(Fq, one) == singular_points(Fq, two));
}

TEST_CASE("klein quartic critical locus") {
    FieldCtx F(12);
    auto klein = MultiPoly::parse("x1^3*x2 + x2^3*x3 + x3^3*x1", F, 3);
    auto crit = critical_points_plane(klein);
    REQUIRE_FALSE(crit.identically_zero);
    REQUIRE(crit.points.size() == 7);
    // the seven points (1, e, e^5) with e^7 = 1
    Rng rng;
    std::vector<std::uint32_t> c(8, 0);
    c[0] = 1;
    c[7] = 1;
    auto eps = univariate_roots(UniPoly(&F, c), rng);
    std::vector<ProjPoint> expect;
    for (auto e : eps)
        expect.push_back(ProjPoint(&F, {1, e.bits, e.pow(5).bits}));
    std::sort(expect.begin(), expect.end());
    REQUIRE(crit.points == expect);
    int d1 = 0, d3 = 0;
    for (const auto& p : crit.points) (p.defdeg() == 1 ? d1 : d3) += 1;
    CHECK(d1 == 1);
    CHECK(d3 == 6);
}

TEST_CASE("critical locus of a square is flagged, not enumerated") {
    FieldCtx F(12);
    auto q = MultiPoly::parse("x1*x2 + x3^2", F, 3);
    auto crit = critical_points_plane(q * q);
    CHECK(crit.identically_zero);
}

TEST_CASE("common zeros in the plane") {
    FieldCtx F(12);
    auto x1 = MultiPoly::parse("x1", F, 3);
    auto x2 = MultiPoly::parse("x2", F, 3);
    auto r = common_zeros_plane({x1, x2});
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0] == ProjPoint(&F, {0, 0, 1}));

    auto r2 = common_zeros_plane({x1, MultiPoly::parse("x1 + x2", F, 3),
                                  MultiPoly::parse("x3", F, 3)});
    CHECK(r2.points.empty());
}

TEST_CASE("local multiplicity of a node is 2, seed independent") {
    FieldCtx F(12);
    auto Fq = elementary_symmetric(F, 1) * elementary_symmetric(F, 3) +
              elementary_symmetric(F, 4);
    ProjPoint P(&F, {0, 0, 1, 1});
    for (std::uint64_t seed : {1ull, 99ull, 100000ull}) {
        auto lm = local_multiplicity(Fq, P, seed);
        REQUIRE(lm.conclusive);
        CHECK(lm.value == 2);
    }
    CHECK_THROWS_AS(local_multiplicity(Fq, ProjPoint(&F, {1, 1, 1, 1})),
                    std::invalid_argument);
}

TEST_CASE("biplanar and uniplanar points give larger local multiplicities") {
    FieldCtx F(12);
    // biplanar: z^2 x1 x2 + x1^4 + x2^4 + x3^4 at (0,0,0,1)
    auto Fb = MultiPoly::parse("z^2*x1*x2 + x1^4 + x2^4 + x3^4", F, 4);
    ProjPoint P(&F, {0, 0, 0, 1});
    auto devb = taylor_at_singular_point(Fb, P);
    REQUIRE(conic_normal_form(devb.parts[2]).kind == ConicKind::TwoLines);
    auto lmb = local_multiplicity(Fb, P);
    REQUIRE(lmb.conclusive);
    CHECK(lmb.value >= 3);

    // uniplanar: the D4 quartic sigma4 + sigma2^2 at a coordinate point
    auto s2 = elementary_symmetric(F, 2);
    auto Fd = elementary_symmetric(F, 4) + s2 * s2;
    ProjPoint Pd(&F, {1, 0, 0, 0});
    auto devd = taylor_at_singular_point(Fd, Pd);
    REQUIRE(conic_normal_form(devd.parts[2]).kind == ConicKind::DoubleLine);
    auto lmd = local_multiplicity(Fd, Pd);
    REQUIRE(lmd.conclusive);
    CHECK(lmd.value >= 8);
}

TEST_CASE("classification records satisfy the cone/multiplicity constraints") {
    FieldCtx F(12);
    auto Fq = elementary_symmetric(F, 1) * elementary_symmetric(F, 3) +
              elementary_symmetric(F, 4);
    for (const auto& p : singular_points(Fq)) {
        auto rec = classify_point(Fq, p);
        CHECK(rec.mult == 2);
        REQUIRE(rec.cone.has_value());
        CHECK(*rec.cone == ConicKind::SmoothConic);
        REQUIRE(rec.local.conclusive);
        CHECK(rec.local.value == 2);
    }
}

TEST_CASE("gauss plane detection") {
    FieldCtx F(12);
    // z^2 Q(x) + B(x): the z-partial vanishes identically
    auto Fi = MultiPoly::parse("z^2*x1*x2 + z^2*x3^2 + x1^4 + x2^4 + x2*x3^3", F, 4);
    auto g1 = gauss_plane_test(Fi);
    REQUIRE(g1.planar);
    REQUIRE(g1.witness.has_value());
    {
        auto w = *g1.witness;
        CHECK(w[0].is_zero());
        CHECK(w[1].is_zero());
        CHECK(w[2].is_zero());
        CHECK(w[3].is_one());
    }

    // w^4 + w^2 x1^2 + B(x)
    auto Fs = MultiPoly::parse("w^4 + w^2*x1^2 + x1^3*x2 + x2^3*x3 + x3^3*x1", F, 4);
    CHECK(gauss_plane_test(Fs).planar);

    // quartics with independent partials
    auto Fg = MultiPoly::parse("x1^4 + x2^4 + x3^4 + z^4 + x1*x2*x3*z", F, 4);
    CHECK_FALSE(gauss_plane_test(Fg).planar);
    CHECK_FALSE(gauss_plane_test(elementary_symmetric(F, 4) +
                                 elementary_symmetric(F, 1) * elementary_symmetric(F, 3))
                    .planar);

    // defined for quartic surfaces only
    CHECK_THROWS_AS(gauss_plane_test(elementary_symmetric(F, 3)), std::invalid_argument);

    // witness property: combination of partials vanishes identically
    auto w = *g1.witness;
    MultiPoly comb(&F, 4);
    for (int i = 0; i < 4; ++i) comb = comb + Fi.partial(i).scaled(w[i]);
    CHECK(comb.is_zero());
}

TEST_CASE("inseparable projection test") {
    FieldCtx F(12);
    auto Fi = MultiPoly::parse("z^2*x1*x2 + z^2*x3^2 + x1^4 + x2^4 + x2*x3^3", F, 4);
    CHECK(is_inseparable_projection(Fi, ProjPoint(&F, {0, 0, 0, 1})));

    auto Fp = elementary_symmetric(F, 1) * elementary_symmetric(F, 3) +
              elementary_symmetric(F, 4);
    CHECK_FALSE(is_inseparable_projection(Fp, ProjPoint(&F, {0, 0, 1, 1})));

    // a nonzero cubic part G makes the projection separable
    auto Fz = MultiPoly::parse("z^2*x1*x2 + z*x3^3 + x1^4 + x2^4 + x3^4", F, 4);
    REQUIRE(is_singular_at(Fz, ProjPoint(&F, {0, 0, 0, 1})));
    CHECK_FALSE(is_inseparable_projection(Fz, ProjPoint(&F, {0, 0, 0, 1})));
}

TEST_CASE("normality heuristic detects degenerate surfaces") {
    FieldCtx F(12);
    auto s1 = elementary_symmetric(F, 1);

    SECTION("reducible: sigma1 times a cubic") {
        auto Fq = s1 * elementary_symmetric(F, 3);
        auto rep = analyze_surface(Fq, {.classify = false});
        CHECK(rep.normality == Normality::NonNormalDetected);
    }

    SECTION("x1^4+x2^4+x3^4+x4^4 is the fourth power of a plane") {
        auto Fq = MultiPoly::parse("x1^4 + x2^4 + x3^4 + z^4", F, 4);
        auto rep = analyze_surface(Fq, {.classify = false});
        CHECK(rep.normality == Normality::NonNormalDetected);
    }

    SECTION("the pencil member is probably normal") {
        auto Fq = s1 * elementary_symmetric(F, 3) + elementary_symmetric(F, 4);
        auto rep = analyze_surface(Fq);
        CHECK(rep.normality == Normality::ProbablyNormal);
        CHECK(rep.total == 10);
        CHECK(rep.degree_residual.has_value());
        CHECK(*rep.degree_residual == 16);  // 36 - 10 * 2
        CHECK(rep.residual_bound_ok);
        CHECK_FALSE(rep.gauss_plane);
    }
}

TEST_CASE("degenerate scans cap out instead of exploding") {
    FieldCtx F(12);
    auto s1 = elementary_symmetric(F, 1);
    EnumOptions opt;
    opt.cap = 100;
    auto r = enumerate_singular(s1 * elementary_symmetric(F, 3), opt);
    CHECK(r.truncated);
    CHECK(r.points.size() <= 100);
}
