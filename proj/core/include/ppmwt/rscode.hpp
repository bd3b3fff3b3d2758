#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ppmwt/galois.hpp"

namespace ppmwt::rs {

using Symbol = std::uint64_t;

/// Largest symbol width for which a code is materialized (eval-point vector
/// and field tables). Bound analysis handles larger alphabets numerically
/// without ever constructing the code.
inline constexpr unsigned kMaxSymbolBits = 20;

/// (b, n, k) Reed-Solomon code over GF(b) with b = 2^w and n = b - 1.
/// Evaluation-style encoding: the message is the coefficient vector of a
/// polynomial of degree < k, evaluated at the n distinct nonzero field
/// elements taken in a canonical order (ascending powers of the field's
/// smallest generator) so codewords are bit-exactly reproducible.
struct RSCodeSpec {
    gf::FieldSpec field;
    std::uint64_t b = 0;  // alphabet size = 2^w
    unsigned n = 0;       // block length = b - 1
    unsigned k = 0;       // message length, 1 <= k <= n; distance n - k + 1
    std::vector<Symbol> eval_points;

    static RSCodeSpec make(unsigned symbol_bits, unsigned k);
};

using Codeword = std::vector<Symbol>;  // length n

/// Received word: per position either a symbol or an erasure.
using ErasureWord = std::vector<std::optional<Symbol>>;  // length n

enum class DecodeFailure {
    TooManyErasures,  // fewer than k unerased positions
    Corrupt,          // interpolation inconsistent with an unerased symbol;
                      // cannot happen on an erasure-only channel, guards misuse
};

struct DecodeResult {
    std::optional<std::vector<Symbol>> message;  // k coefficients when decoding succeeded
    DecodeFailure failure = DecodeFailure::TooManyErasures;
    unsigned erasures = 0;

    bool ok() const { return message.has_value(); }
};

/// Evaluate the message polynomial at every canonical point. Linear in the
/// message. Throws std::invalid_argument on a wrong-length message or a
/// symbol outside GF(b).
Codeword rs_encode(std::span<const Symbol> message, const RSCodeSpec& spec);

/// Erasure-only decoding: interpolate the unique degree-<k polynomial through
/// k unerased positions and verify it against all unerased positions.
/// Succeeds for every erasure pattern of weight <= n - k applied to a true
/// codeword.
DecodeResult rs_decode_erasures(const ErasureWord& received, const RSCodeSpec& spec);

namespace detail {

/// Decode interpolating through an explicit choice of k unerased positions
/// (indices into `received`). The public decoder uses the first k; the result
/// must not depend on the choice, which tests verify through this hook.
DecodeResult decode_with_support(const ErasureWord& received, const RSCodeSpec& spec,
                                 std::span<const unsigned> support);

}  // namespace detail

}  // namespace ppmwt::rs
