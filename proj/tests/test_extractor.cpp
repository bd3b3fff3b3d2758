#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include <ppmwt/extractor.hpp>
#include <ppmwt/random.hpp>

#include "oracles.hpp"

using namespace ppmwt;
using namespace ppmwt::extractor;
using gf::FieldElement;
using gf::FieldSpec;
using gf::Word;

namespace {

ExtractorSpec make_spec(unsigned m, unsigned lambda) {
    return ExtractorSpec(FieldSpec::standard(m), lambda);
}

Seed seed_of(Word v, const ExtractorSpec& spec) {
    return Seed(FieldElement(v, spec.field));
}

SourceWord word_of(Word v, const ExtractorSpec& spec) {
    return SourceWord{FieldElement(v, spec.field)};
}

}  // namespace

TEST_CASE("hand-checked GF(2^3) extraction") {
    // product of 0b010 and 0b011 is 0b110 (verified against the schoolbook
    // oracle); its top bit is 1
    const ExtractorSpec spec(FieldSpec(3, 0b1011), 1);
    CHECK(oracles::gf_mul(0b010, 0b011, 0b1011) == 0b110);
    const Message m = extract(word_of(0b010, spec), seed_of(0b011, spec), spec);
    CHECK(m.bits == 1);
    CHECK(m.length == 1);
}

TEST_CASE("unit seed copies the top bits of the source word") {
    for (unsigned m : {4u, 7u, 10u}) {
        for (unsigned lambda : {0u, 1u, m / 2, m}) {
            const ExtractorSpec spec = make_spec(m, lambda);
            RandomStream rng(5, m * 100 + lambda);
            for (int t = 0; t < 200; ++t) {
                const Word l = rng.bits(m);
                const Message out = extract(word_of(l, spec), seed_of(1, spec), spec);
                CHECK(out.bits == (lambda == 0 ? 0 : l >> (m - lambda)));
                CHECK(out.length == lambda);
            }
        }
    }
}

TEST_CASE("extract composed with invert is the identity, exhaustive m <= 8") {
    for (unsigned m = 1; m <= 8; ++m) {
        for (unsigned lambda : std::set<unsigned>{0u, 1u, m / 2, m}) {
            const ExtractorSpec spec = make_spec(m, lambda);
            const Word order = spec.field.order_mask();
            for (Word s = 1; s <= order; ++s) {
                const Seed seed = seed_of(s, spec);
                for (Word msg = 0; msg < (Word(1) << lambda); ++msg) {
                    std::set<Word> images;
                    for (Word r = 0; r < (Word(1) << (m - lambda)); ++r) {
                        const SourceWord l = invert(Message{msg, lambda}, seed,
                                                    LocalRandomness{r, m - lambda}, spec);
                        const Message back = extract(l, seed, spec);
                        CHECK(back.bits == msg);
                        images.insert(l.value.value());
                    }
                    // pre-image uniformity: distinct randomness, distinct words
                    CHECK(images.size() == (std::size_t(1) << (m - lambda)));
                }
            }
        }
    }
}

TEST_CASE("lambda = m leaves no local randomness and a unique pre-image") {
    const ExtractorSpec spec = make_spec(6, 6);
    RandomStream rng(13);
    for (int t = 0; t < 500; ++t) {
        const Word msg = rng.bits(6);
        const Word s = 1 + rng.below(spec.field.order_mask());
        const SourceWord l =
            invert(Message{msg, 6}, seed_of(s, spec), LocalRandomness{0, 0}, spec);
        CHECK(l.value.value() == spec.field.mul(msg, spec.field.inv(s)));
    }
}

TEST_CASE("inverter outputs enumerate exactly the pre-image set (GF(2^3))") {
    const ExtractorSpec spec(FieldSpec(3, 0b1011), 1);
    const Seed seed = seed_of(0b011, spec);
    for (Word msg = 0; msg < 2; ++msg) {
        // brute force the true pre-image set over all 8 field elements
        std::set<Word> truth;
        for (Word l = 0; l < 8; ++l)
            if (extract(word_of(l, spec), seed, spec).bits == msg) truth.insert(l);

        std::set<Word> produced;
        for (Word r = 0; r < 4; ++r)
            produced.insert(
                invert(Message{msg, 1}, seed, LocalRandomness{r, 2}, spec).value.value());

        CHECK(truth == produced);
        CHECK(produced.size() == 4);
    }
}

TEST_CASE("error paths: zero seed, mismatched lengths, oversized bits") {
    const ExtractorSpec spec = make_spec(4, 2);
    CHECK_THROWS_AS(Seed(FieldElement(0, spec.field)), std::domain_error);
    CHECK_THROWS_AS(invert(Message{0, 1}, seed_of(3, spec), LocalRandomness{0, 2}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(invert(Message{0, 2}, seed_of(3, spec), LocalRandomness{0, 3}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(invert(Message{7, 2}, seed_of(3, spec), LocalRandomness{0, 2}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExtractorSpec(FieldSpec::standard(4), 5), std::invalid_argument);
    // element from a different field
    const ExtractorSpec other = make_spec(5, 2);
    CHECK_THROWS_AS(extract(SourceWord{FieldElement(1, other.field)}, seed_of(3, spec), spec),
                    std::invalid_argument);
}

TEST_CASE("two-universality over the nonzero seeds, exhaustive m <= 6") {
    for (unsigned m = 2; m <= 6; ++m) {
        for (unsigned lambda = 1; lambda <= m; ++lambda) {
            const ExtractorSpec spec = make_spec(m, lambda);
            const Word order = spec.field.order_mask();
            const double bound = std::ldexp(1.0, -static_cast<int>(lambda)) *
                                 std::ldexp(1.0, static_cast<int>(m)) /
                                 static_cast<double>(order);
            for (Word l1 = 0; l1 <= order; ++l1) {
                for (Word l2 = l1 + 1; l2 <= order; ++l2) {
                    unsigned collisions = 0;
                    for (Word s = 1; s <= order; ++s) {
                        const Seed seed = seed_of(s, spec);
                        if (extract(word_of(l1, spec), seed, spec) ==
                            extract(word_of(l2, spec), seed, spec))
                            ++collisions;
                    }
                    CHECK(static_cast<double>(collisions) / order <= bound);
                }
            }
        }
    }
}

TEST_CASE("statistical distance: product distribution scores zero") {
    // uniform messages times an arbitrary seed marginal
    std::vector<std::vector<double>> joint(4, std::vector<double>(3));
    const double seed_marginal[3] = {0.5, 0.3, 0.2};
    for (auto& row : joint)
        for (int j = 0; j < 3; ++j) row[j] = 0.25 * seed_marginal[j];
    CHECK(statistical_distance_to_uniform(joint) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("statistical distance: a deterministic bit is 1/2 from uniform") {
    std::vector<std::vector<double>> joint{{0.7, 0.3}, {0.0, 0.0}};
    CHECK(statistical_distance_to_uniform(joint) == doctest::Approx(0.5));
}

TEST_CASE("statistical distance rejects unnormalized input") {
    CHECK_THROWS_AS(statistical_distance_to_uniform({{0.5, 0.1}, {0.1, 0.1}}),
                    std::domain_error);
    CHECK_THROWS_AS(statistical_distance_to_uniform({{0.9, 0.2}, {-0.1, 0.0}}),
                    std::domain_error);
    CHECK_THROWS_AS(statistical_distance_to_uniform({{0.5, 0.5}, {0.0}}),
                    std::domain_error);
}

namespace {

/// Joint (message, seed) distribution for L flat on `support`, seed uniform
/// over the nonzero elements.
std::vector<std::vector<double>> joint_for_source(const std::vector<Word>& support,
                                                  const ExtractorSpec& spec) {
    const Word order = spec.field.order_mask();
    std::vector<std::vector<double>> joint(
        std::size_t(1) << spec.lambda,
        std::vector<double>(order, 0.0));
    const double atom = 1.0 / (static_cast<double>(support.size()) *
                               static_cast<double>(order));
    for (Word l : support) {
        for (Word s = 1; s <= order; ++s) {
            const Message m = extract(word_of(l, spec), seed_of(s, spec), spec);
            joint[m.bits][s - 1] += atom;
        }
    }
    return joint;
}

}  // namespace

TEST_CASE("uniform source: distance is far below the hash bound (GF(2^4))") {
    const ExtractorSpec spec = make_spec(4, 2);
    std::vector<Word> support(16);
    for (Word l = 0; l < 16; ++l) support[l] = l;
    const double dist = statistical_distance_to_uniform(joint_for_source(support, spec));
    // leftover-hash bound at full entropy: 0.5 * sqrt(2^lambda / 2^m) = 1/4
    CHECK(dist <= 0.25);
    // a uniform source times a nonzero seed stays exactly uniform
    CHECK(dist == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("leftover hash dominance for flat sources on GF(2^6)") {
    RandomStream rng(99);
    for (unsigned lambda : {1u, 2u, 3u}) {
        const ExtractorSpec spec = make_spec(6, lambda);
        for (unsigned h = 0; h <= 6; ++h) {
            const double bound =
                0.5 * std::sqrt(std::ldexp(1.0, static_cast<int>(lambda)) *
                                std::ldexp(1.0, -static_cast<int>(h))) +
                std::ldexp(1.0, -6);
            const std::size_t size = std::size_t(1) << h;
            for (int pick = 0; pick < 60; ++pick) {
                std::set<Word> chosen;
                while (chosen.size() < size) chosen.insert(rng.bits(6));
                std::vector<Word> support(chosen.begin(), chosen.end());
                const double dist =
                    statistical_distance_to_uniform(joint_for_source(support, spec));
                CHECK(dist <= bound);
            }
        }
    }
}
