#include "ppmwt/rscode.hpp"

#include <stdexcept>

namespace ppmwt::rs {

RSCodeSpec RSCodeSpec::make(unsigned symbol_bits, unsigned k) {
    if (symbol_bits < 1 || symbol_bits > kMaxSymbolBits)
        throw std::invalid_argument("symbol width must be in [1, 20] bits");
    RSCodeSpec spec{gf::FieldSpec::standard(symbol_bits), 0, 0, 0, {}};
    spec.b = std::uint64_t(1) << symbol_bits;
    spec.n = static_cast<unsigned>(spec.b - 1);
    if (k < 1 || k > spec.n)
        throw std::invalid_argument("message length k must be in [1, n]");
    spec.k = k;

    spec.eval_points.resize(spec.n);
    const gf::Word g = spec.field.generator();
    gf::Word point = 1;
    for (unsigned i = 0; i < spec.n; ++i) {
        spec.eval_points[i] = point;
        point = spec.field.mul(point, g);
    }
    return spec;
}

namespace {

Symbol eval_poly(std::span<const Symbol> coeffs, Symbol x, const gf::FieldSpec& field) {
    Symbol acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = field.mul(acc, x) ^ coeffs[i];
    return acc;
}

}  // namespace

Codeword rs_encode(std::span<const Symbol> message, const RSCodeSpec& spec) {
    if (message.size() != spec.k)
        throw std::invalid_argument("message must hold exactly k symbols");
    for (Symbol s : message)
        if (s > spec.field.order_mask())
            throw std::invalid_argument("message symbol outside GF(b)");

    Codeword out(spec.n);
    for (unsigned i = 0; i < spec.n; ++i)
        out[i] = eval_poly(message, spec.eval_points[i], spec.field);
    return out;
}

namespace detail {

DecodeResult decode_with_support(const ErasureWord& received, const RSCodeSpec& spec,
                                 std::span<const unsigned> support) {
    if (received.size() != spec.n)
        throw std::invalid_argument("received word must have length n");
    if (support.size() != spec.k)
        throw std::invalid_argument("support must list exactly k positions");

    DecodeResult result;
    unsigned unerased = 0;
    for (const auto& slot : received)
        if (slot.has_value()) ++unerased;
    result.erasures = spec.n - unerased;

    const auto& field = spec.field;
    const unsigned k = spec.k;

    // master(x) = prod over support of (x + x_j)
    std::vector<Symbol> master(k + 1, 0);
    master[0] = 1;
    unsigned master_deg = 0;
    for (unsigned idx : support) {
        if (idx >= spec.n || !received[idx].has_value())
            throw std::invalid_argument("support position is erased or out of range");
        const Symbol xj = spec.eval_points[idx];
        master[master_deg + 1] = master[master_deg];
        for (unsigned i = master_deg; i > 0; --i)
            master[i] = master[i - 1] ^ field.mul(master[i], xj);
        master[0] = field.mul(master[0], xj);
        ++master_deg;
    }

    // Lagrange basis accumulated in coefficient form
    std::vector<Symbol> coeffs(k, 0);
    std::vector<Symbol> quotient(k, 0);
    for (unsigned idx : support) {
        const Symbol xj = spec.eval_points[idx];
        // synthetic division master / (x + x_j)
        quotient[k - 1] = master[k];
        for (unsigned i = k - 1; i > 0; --i)
            quotient[i - 1] = master[i] ^ field.mul(quotient[i], xj);
        const Symbol denom = eval_poly(quotient, xj, field);  // = master'(x_j)
        const Symbol scale = field.mul(*received[idx], field.inv(denom));
        for (unsigned i = 0; i < k; ++i) coeffs[i] ^= field.mul(scale, quotient[i]);
    }

    // the interpolant must agree with every unerased position
    for (unsigned i = 0; i < spec.n; ++i) {
        if (!received[i].has_value()) continue;
        if (eval_poly(coeffs, spec.eval_points[i], field) != *received[i]) {
            result.failure = DecodeFailure::Corrupt;
            return result;
        }
    }
    result.message = std::move(coeffs);
    return result;
}

}  // namespace detail

DecodeResult rs_decode_erasures(const ErasureWord& received, const RSCodeSpec& spec) {
    if (received.size() != spec.n)
        throw std::invalid_argument("received word must have length n");

    std::vector<unsigned> support;
    support.reserve(spec.k);
    unsigned unerased = 0;
    for (unsigned i = 0; i < spec.n; ++i) {
        if (received[i].has_value()) {
            ++unerased;
            if (support.size() < spec.k) support.push_back(i);
        }
    }
    if (unerased < spec.k) {
        DecodeResult result;
        result.failure = DecodeFailure::TooManyErasures;
        result.erasures = spec.n - unerased;
        return result;
    }
    return detail::decode_with_support(received, spec, support);
}

}  // namespace ppmwt::rs
