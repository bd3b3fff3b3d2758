#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ppmwt/galois.hpp>
#include <ppmwt/random.hpp>

#include "oracles.hpp"

using namespace ppmwt;
using gf::FieldElement;
using gf::FieldSpec;
using gf::Word;

TEST_CASE("default moduli are the smallest irreducible polynomials") {
    for (unsigned m = 1; m <= 12; ++m) {
        const FieldSpec spec = FieldSpec::standard(m);
        const gf::Wide modulus = spec.modulus();
        CHECK(oracles::irreducible(m, modulus));
        // nothing smaller of the same degree is irreducible
        for (gf::Wide cand = gf::Wide(1) << m; cand < modulus; ++cand)
            CHECK_FALSE(oracles::irreducible(m, cand));
    }
}

TEST_CASE("field construction rejects bad moduli") {
    CHECK_THROWS_AS(FieldSpec(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(65, gf::Wide(1) << 65), std::invalid_argument);
    // degree mismatch: top bit not at m
    CHECK_THROWS_AS(FieldSpec(3, 0b10011), std::invalid_argument);
    // x^3 + x^2 + x + 1 = (x + 1)^3 is reducible
    CHECK_THROWS_AS(FieldSpec(3, 0b1111), std::invalid_argument);
    CHECK_NOTHROW(FieldSpec(3, 0b1011));
    CHECK_NOTHROW(FieldSpec(3, 0b1101));
}

TEST_CASE("hand-checked GF(2^3) arithmetic") {
    const FieldSpec f(3, 0b1011);
    const auto e = [&](Word v) { return FieldElement(v, f); };

    CHECK(gf_add(e(0b010), e(0b011)).value() == 0b001);
    CHECK(gf_mul(e(0b010), e(0b011)).value() == 0b110);
    CHECK(gf_inv(e(0b010)).value() == 0b101);
    CHECK(gf_pow(e(0b010), 7).value() == 1);
    CHECK(gf_inv(e(1)).value() == 1);
    CHECK_THROWS_AS(gf_inv(e(0)), std::domain_error);
}

TEST_CASE("additive structure: identity, characteristic 2, commutativity") {
    for (unsigned m : {1u, 3u, 5u, 8u}) {
        const FieldSpec f = FieldSpec::standard(m);
        for (Word a = 0; a <= f.order_mask(); ++a) {
            const FieldElement ea(a, f);
            CHECK(gf_add(ea, FieldElement(0, f)) == ea);
            CHECK(gf_add(ea, ea).value() == 0);
        }
    }
}

TEST_CASE("multiplicative identities and annihilator") {
    for (unsigned m : {2u, 4u, 7u}) {
        const FieldSpec f = FieldSpec::standard(m);
        for (Word a = 0; a <= f.order_mask(); ++a) {
            const FieldElement ea(a, f);
            CHECK(gf_mul(ea, FieldElement(1, f)) == ea);
            CHECK(gf_mul(ea, FieldElement(0, f)).value() == 0);
            CHECK(gf_pow(ea, 0).value() == 1);
            CHECK(gf_pow(ea, 1) == ea);
        }
    }
}

TEST_CASE("nonzero elements form a multiplicative group, m <= 8") {
    for (unsigned m = 1; m <= 8; ++m) {
        const FieldSpec f = FieldSpec::standard(m);
        const Word order = f.order_mask();

        // closure and exhaustive inverses
        for (Word a = 1; a <= order; ++a) {
            const Word inv = f.inv(a);
            CHECK(inv >= 1);
            CHECK(f.mul(a, inv) == 1);
            CHECK(f.inv(inv) == a);           // involution
            CHECK(f.pow(a, order) == 1);      // Lagrange
        }

        // associativity and distributivity on sampled triples
        RandomStream rng(2024, m);
        for (int trial = 0; trial < 2000; ++trial) {
            const Word a = rng.below(order + 1), b = rng.below(order + 1),
                       c = rng.below(order + 1);
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
        }
    }
}

TEST_CASE("table and carry-less multiplication agree with the schoolbook oracle") {
    // exhaustive for small fields
    for (unsigned m = 1; m <= 4; ++m) {
        const FieldSpec f = FieldSpec::standard(m);
        for (Word a = 0; a <= f.order_mask(); ++a) {
            for (Word b = 0; b <= f.order_mask(); ++b) {
                const Word expected = oracles::gf_mul(a, b, f.modulus());
                CHECK(f.mul(a, b) == expected);
                CHECK(f.mul_carryless(a, b) == expected);
            }
        }
    }
    // randomized up to m = 16 (both the table path and the raw path)
    for (unsigned m : {5u, 8u, 12u, 16u}) {
        const FieldSpec f = FieldSpec::standard(m);
        RandomStream rng(7, m);
        for (int trial = 0; trial < 25000; ++trial) {
            const Word a = rng.bits(m), b = rng.bits(m);
            const Word expected = oracles::gf_mul(a, b, f.modulus());
            CHECK(f.mul(a, b) == expected);
            CHECK(f.mul_carryless(a, b) == expected);
        }
    }
}

TEST_CASE("wide fields: m in (16, 64] use the carry-less path") {
    for (unsigned m : {17u, 33u, 48u, 64u}) {
        const FieldSpec f = FieldSpec::standard(m);
        RandomStream rng(11, m);
        for (int trial = 0; trial < 200; ++trial) {
            Word a = rng.bits(m);
            if (a == 0) a = 1;
            const Word b = rng.bits(m);
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.mul(a, b) == oracles::gf_mul(a, b, f.modulus()));
        }
        // x^(2^m - 1) = 1 for the generator-sized exponent
        CHECK(f.pow(2, f.order_mask()) == 1);
    }
}

TEST_CASE("mismatched fields are rejected") {
    const FieldSpec f3 = FieldSpec::standard(3);
    const FieldSpec f4 = FieldSpec::standard(4);
    const FieldSpec f3_alt(3, 0b1101);
    CHECK_THROWS_AS(gf_add(FieldElement(1, f3), FieldElement(1, f4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(gf_mul(FieldElement(1, f3), FieldElement(1, f3_alt)),
                    std::invalid_argument);
    CHECK_THROWS_AS(FieldElement(8, f3), std::invalid_argument);  // value too wide
}

TEST_CASE("generator is primitive and enumerates the nonzero elements") {
    for (unsigned m : {3u, 8u, 10u}) {
        const FieldSpec f = FieldSpec::standard(m);
        const Word g = f.generator();
        std::vector<bool> seen(f.order_mask() + 1, false);
        Word v = 1;
        for (Word i = 0; i < f.order_mask(); ++i) {
            CHECK_FALSE(seen[v]);
            seen[v] = true;
            v = f.mul(v, g);
        }
        CHECK(v == 1);  // full cycle
    }
}
