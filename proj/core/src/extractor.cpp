#include "ppmwt/extractor.hpp"

#include <cmath>
#include <stdexcept>

namespace ppmwt::extractor {

ExtractorSpec::ExtractorSpec(gf::FieldSpec f, unsigned output_bits)
    : field(std::move(f)), lambda(output_bits) {
    if (lambda > field.degree())
        throw std::invalid_argument("output length exceeds field degree");
}

Seed::Seed(gf::FieldElement value) : value_(std::move(value)) {
    if (value_.value() == 0) throw std::domain_error("seed must be nonzero");
}

namespace {

void require_field(const gf::FieldElement& e, const ExtractorSpec& spec) {
    if (!(e.spec() == spec.field))
        throw std::invalid_argument("element does not live in the extractor field");
}

}  // namespace

Message extract(const SourceWord& l, const Seed& s, const ExtractorSpec& spec) {
    require_field(l.value, spec);
    require_field(s.value(), spec);
    if (spec.lambda == 0) return Message{0, 0};
    const gf::Word product = spec.field.mul(l.value.value(), s.value().value());
    const unsigned drop = spec.field.degree() - spec.lambda;
    return Message{product >> drop, spec.lambda};
}

SourceWord invert(const Message& m, const Seed& s, const LocalRandomness& r,
                  const ExtractorSpec& spec) {
    require_field(s.value(), spec);
    const unsigned degree = spec.field.degree();
    if (m.length != spec.lambda)
        throw std::invalid_argument("message length does not match the extractor");
    if (r.length != degree - spec.lambda)
        throw std::invalid_argument("local randomness must supply m - lambda bits");
    if (spec.lambda < 64 && (m.bits >> spec.lambda) != 0)
        throw std::invalid_argument("message bits exceed the stated length");
    if (r.length < 64 && (r.bits >> r.length) != 0)
        throw std::invalid_argument("randomness bits exceed the stated length");

    const gf::Word packed =
        (spec.lambda == 0 ? 0 : m.bits << (degree - spec.lambda)) | r.bits;
    const gf::Word seed_inv = spec.field.inv(s.value().value());
    return SourceWord{gf::FieldElement(spec.field.mul(packed, seed_inv), spec.field)};
}

double statistical_distance_to_uniform(const std::vector<std::vector<double>>& joint) {
    if (joint.empty()) throw std::domain_error("empty distribution");
    const std::size_t rows = joint.size();
    const std::size_t cols = joint.front().size();

    std::vector<double> col_marginal(cols, 0.0);
    double total = 0.0;
    for (const auto& row : joint) {
        if (row.size() != cols) throw std::domain_error("ragged distribution");
        for (std::size_t j = 0; j < cols; ++j) {
            if (row[j] < -1e-12) throw std::domain_error("negative probability");
            col_marginal[j] += row[j];
            total += row[j];
        }
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::domain_error("distribution is not normalized");

    const double uniform = 1.0 / static_cast<double>(rows);
    double distance = 0.0;
    for (const auto& row : joint)
        for (std::size_t j = 0; j < cols; ++j)
            distance += std::abs(row[j] - uniform * col_marginal[j]);
    return 0.5 * distance;
}

}  // namespace ppmwt::extractor
