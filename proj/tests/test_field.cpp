#include <catch2/catch_amalgamated.hpp>

#include "charq/field.hpp"
#include "charq/mpoly.hpp"
#include "charq/unipoly.hpp"

using namespace charq;

TEST_CASE("sieve moduli are pinned and deterministic") {
    // golden values from the documented sieve order (constant term upward)
    CHECK(FieldCtx(1).modulus() == 0b10u);            // t, the prime field
    CHECK(FieldCtx(2).modulus() == 0b111u);           // t^2+t+1, the only choice
    CHECK(FieldCtx(3).modulus() == 0b1101u);          // t^3+t^2+1
    CHECK(FieldCtx(12).modulus() == 0x1201u);         // t^12+t^9+1
    CHECK(FieldCtx(12).modulus() == FieldCtx(12).modulus());
}

TEST_CASE("field constructor validates input") {
    CHECK_THROWS_AS(FieldCtx(0), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx(25), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx(4, 0b10101u), std::invalid_argument);  // t^4+t^2+1 reducible
    CHECK_THROWS_AS(FieldCtx(4, 0b111u), std::invalid_argument);    // wrong degree
    CHECK_NOTHROW(FieldCtx(4, 0b10011u));                           // t^4+t+1
}

TEST_CASE("GF(4) arithmetic by hand") {
    FieldCtx F(2);
    auto t = F.gen();
    CHECK((t * t + t + F.one()).is_zero());  // t^2 = t+1
    CHECK(t.inv() == t + F.one());           // t(t+1) = 1
    CHECK((t * t * t).is_one());             // order 3
    CHECK(t.trace() == 1);                   // u + u^2 = 1
}

TEST_CASE("identity and inverse laws") {
    FieldCtx F(12);
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        FieldElement x = F.element(rng.element_bits(F));
        CHECK(F.one() * x == x);
        if (!x.is_zero()) CHECK((x.inv() * x).is_one());
    }
    // exhaustive inverse check at small degrees
    for (int m : {2, 3, 4, 6, 8}) {
        FieldCtx G(m);
        for (std::uint32_t b = 1; b < G.order(); ++b) {
            FieldElement x = G.element(b);
            REQUIRE((x.inv() * x).is_one());
        }
    }
    CHECK_THROWS_AS(F.zero().inv(), std::domain_error);
}

TEST_CASE("context mismatch fails loudly") {
    FieldCtx F(12), G(12);
    CHECK_THROWS_AS(F.one() + G.one(), std::invalid_argument);
    CHECK_THROWS_AS(F.one() * G.gen(), std::invalid_argument);
}

TEST_CASE("frobenius is additive and sqrt inverts it") {
    FieldCtx F(12);
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        FieldElement x = F.element(rng.element_bits(F));
        FieldElement y = F.element(rng.element_bits(F));
        CHECK((x + y).frobenius() == x.frobenius() + y.frobenius());
        CHECK(x.frobenius().sqrt() == x);
        CHECK(x.sqrt() * x.sqrt() == x);
    }
    CHECK(F.zero().sqrt().is_zero());
    CHECK(F.one().sqrt().is_one());
}

TEST_CASE("trace is GF(2)-linear and surjective") {
    for (int m : {1, 2, 3, 4, 6, 12}) {
        FieldCtx F(m);
        int ones = 0;
        for (std::uint32_t b = 0; b < F.order(); ++b) {
            const int tr = F.element(b).trace();
            REQUIRE((tr == 0 || tr == 1));
            ones += tr;
        }
        CHECK(ones == static_cast<int>(F.order() / 2));  // linear and onto
        Rng rng(m);
        for (int i = 0; i < 50; ++i) {
            FieldElement x = F.element(rng.element_bits(F));
            FieldElement y = F.element(rng.element_bits(F));
            CHECK(F.element(x.bits ^ y.bits).trace() == (x.trace() ^ y.trace()));
        }
    }
}

TEST_CASE("solve_quadratic matches exhaustive scan") {
    for (int m : {2, 3, 4}) {
        FieldCtx F(m);
        for (std::uint32_t bb = 0; bb < F.order(); ++bb)
            for (std::uint32_t cc = 0; cc < F.order(); ++cc) {
                auto b = F.element(bb), c = F.element(cc);
                auto roots = F.solve_quadratic(b, c);
                std::vector<std::uint32_t> expect;
                for (std::uint32_t z = 0; z < F.order(); ++z) {
                    auto ze = F.element(z);
                    if ((ze * ze + b * ze + c).is_zero()) expect.push_back(z);
                }
                std::vector<std::uint32_t> got;
                for (auto r : roots) got.push_back(r.bits);
                std::sort(got.begin(), got.end());
                REQUIRE(got == expect);
            }
    }
    // randomized cross-check at m = 12 (the even-degree linear-solve path)
    FieldCtx F(12);
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        auto b = F.element(rng.element_bits(F));
        auto c = F.element(rng.element_bits(F));
        auto roots = F.solve_quadratic(b, c);
        std::vector<std::uint32_t> expect;
        for (std::uint32_t z = 0; z < F.order(); ++z) {
            auto ze = F.element(z);
            if ((ze * ze + b * ze + c).is_zero()) expect.push_back(z);
        }
        std::vector<std::uint32_t> got;
        for (auto r : roots) got.push_back(r.bits);
        std::sort(got.begin(), got.end());
        REQUIRE(got == expect);
    }
}

TEST_CASE("artin-schreier special cases") {
    FieldCtx F(12);
    // z^2 + z = 0
    auto roots = F.solve_quadratic(F.one(), F.zero());
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].is_zero());
    CHECK(roots[1].is_one());
    // inseparable case: b = 0
    auto x = F.gen();
    auto r = F.solve_quadratic(F.zero(), x);
    REQUIRE(r.size() == 1);
    CHECK(r[0] * r[0] == x);
}

TEST_CASE("the GF(4) generator and the quadratic z^2+z+u^2") {
    FieldCtx F(12);
    auto u = F.gf4_generator();
    CHECK((u * u + u + F.one()).is_zero());
    CHECK(F.subfield_degree(u) == 2);
    // no roots in the GF(4) subfield; both roots generate GF(16)
    auto roots = F.solve_quadratic(F.one(), u * u);
    REQUIRE(roots.size() == 2);
    for (auto r : roots) CHECK(F.subfield_degree(r) == 4);
}

TEST_CASE("subfield degrees") {
    FieldCtx F(12);
    CHECK(F.subfield_degree(F.zero()) == 1);
    CHECK(F.subfield_degree(F.one()) == 1);
    CHECK(F.subfield_degree(F.gen()) == 12);  // t generates the full field
    for (int k : {1, 2, 3, 4, 6, 12}) {
        auto sub = F.subfield_elements(k);
        CHECK(sub.size() == (std::size_t{1} << k));
        for (auto b : sub) CHECK(12 % F.subfield_degree(F.element(b)) == 0);
    }
}

TEST_CASE("large-degree fields use the table-free path") {
    FieldCtx F(20);
    CHECK(F.modulus() >> 20 == 1);
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        FieldElement x = F.element(rng.element_bits(F));
        FieldElement y = F.element(rng.element_bits(F));
        CHECK(x.frobenius().sqrt() == x);
        CHECK((x + y) * (x + y) == x * x + y * y);
        if (!x.is_zero()) CHECK((x.inv() * x).is_one());
    }
    auto roots = F.solve_quadratic(F.one(), F.gen());
    for (auto r : roots) CHECK((r * r + r + F.gen()).is_zero());
}

TEST_CASE("element parsing and printing round trip") {
    FieldCtx F(12);
    for (std::uint32_t b : {0u, 1u, 2u, 3u, 520u, 4095u}) {
        auto e = F.element(b);
        CHECK(F.parse_element(e.str()) == e);
    }
    CHECK(F.parse_element("u^2+1").bits == 5u);
    CHECK(F.parse_element("0").bits == 0u);
}
