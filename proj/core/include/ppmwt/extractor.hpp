#pragma once

#include <cstdint>
#include <vector>

#include "ppmwt/galois.hpp"

namespace ppmwt::extractor {

/// Strong extractor over GF(2^m): the output is the first (most significant)
/// lambda bits of the field product of source word and seed. The matching
/// inverter maps (message, seed, local randomness) to a uniform pre-image.
struct ExtractorSpec {
    gf::FieldSpec field;
    unsigned lambda;  // output length in bits, 0 <= lambda <= m

    ExtractorSpec(gf::FieldSpec f, unsigned output_bits);
    unsigned input_bits() const { return field.degree(); }
};

/// A lambda-bit message. bits < 2^length, with bit 0 the least significant.
struct Message {
    std::uint64_t bits = 0;
    unsigned length = 0;

    bool operator==(const Message&) const = default;
};

/// Extractor seed: a nonzero field element. The zero seed is excluded because
/// extraction with it is constant and inversion undefined; drawing uniformly
/// from the 2^m - 1 nonzero elements costs at most 2^-m in statistical
/// distance against the uniform-seed hash family.
class Seed {
public:
    explicit Seed(gf::FieldElement value);
    const gf::FieldElement& value() const { return value_; }

private:
    gf::FieldElement value_;
};

/// The expanded source word L living in the extractor field.
struct SourceWord {
    gf::FieldElement value;
};

/// Uniform local randomness consumed by the inverter: m - lambda bits.
struct LocalRandomness {
    std::uint64_t bits = 0;
    unsigned length = 0;
};

/// Most significant lambda bits (coefficients of x^(m-1) ... x^(m-lambda))
/// of the field product l * s.
Message extract(const SourceWord& l, const Seed& s, const ExtractorSpec& spec);

/// concat(message, randomness) * s^-1. For fixed (message, seed) the map
/// randomness -> source word is a bijection onto the extractor pre-image set.
SourceWord invert(const Message& m, const Seed& s, const LocalRandomness& r,
                  const ExtractorSpec& spec);

/// Total variation distance between a joint distribution (rows: message
/// values, columns: any side-information alphabet such as the seed, or the
/// seed paired with an adversary record) and the product of a uniform row
/// distribution with the column marginal. Intended for exhaustive oracles at
/// small sizes. Throws std::domain_error if the input is not a normalized
/// distribution.
double statistical_distance_to_uniform(const std::vector<std::vector<double>>& joint);

}  // namespace ppmwt::extractor
