#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace ppmwt::gf {

using Word = std::uint64_t;
/// Wide enough for a full degree-64 modulus (65 bits) and for unreduced
/// products of two degree-63 polynomials.
using Wide = unsigned __int128;

/// Description of a binary extension field GF(2^m), 1 <= m <= 64, together
/// with its arithmetic engine. Elements are bit strings of length m with
/// bit i holding the coefficient of x^i; the modulus is an irreducible
/// polynomial of degree exactly m, verified at construction.
///
/// Copies are cheap (log/antilog tables for m <= 16 are shared) and all
/// operations are pure, so a FieldSpec may be used concurrently without
/// restriction.
class FieldSpec {
public:
    static constexpr unsigned kMaxDegree = 64;
    /// Largest degree for which a multiplicative generator is located at
    /// construction (needed for Reed-Solomon evaluation points).
    static constexpr unsigned kMaxGeneratorDegree = 20;

    /// Field with the fixed default modulus for this degree: the
    /// lexicographically smallest irreducible polynomial. Using a fixed
    /// default keeps outputs bit-identical across runs and implementations.
    static FieldSpec standard(unsigned degree);

    /// Field with an explicit modulus, given as the full (m+1)-bit mask.
    /// Throws std::invalid_argument if the degree is out of range, the top
    /// bit is not set, or the polynomial is reducible.
    FieldSpec(unsigned degree, Wide modulus);

    unsigned degree() const { return degree_; }
    Wide modulus() const { return (Wide(1) << degree_) | modulus_low_; }
    Word modulus_low() const { return modulus_low_; }
    /// 2^m - 1: largest element value, also the multiplicative group order.
    Word order_mask() const {
        return degree_ == 64 ? ~Word(0) : ((Word(1) << degree_) - 1);
    }

    /// Smallest primitive element, available for degree <= kMaxGeneratorDegree.
    Word generator() const;

    bool operator==(const FieldSpec& other) const {
        return degree_ == other.degree_ && modulus_low_ == other.modulus_low_;
    }

    // Raw-value arithmetic. Callers are responsible for value range; these
    // are the hot-path entry points used by the coding layers.
    Word add(Word a, Word b) const { return a ^ b; }
    Word mul(Word a, Word b) const {
        if (a == 0 || b == 0) return 0;
        if (tables_) return tables_->exp[tables_->log[a] + tables_->log[b]];
        return mul_carryless(a, b);
    }
    /// Multiplicative inverse; throws std::domain_error on 0.
    Word inv(Word a) const;
    /// a^e with a^0 = 1 (including a = 0).
    Word pow(Word a, std::uint64_t e) const;

    /// Shift-XOR multiplication with modular reduction, bypassing the tables.
    /// Exposed so tests can compare both routes against each other.
    Word mul_carryless(Word a, Word b) const;

private:
    struct Tables {
        std::vector<Word> exp;           // 2*(2^m - 1) entries, doubled to skip a mod
        std::vector<std::uint32_t> log;  // 2^m entries, log[0] unused
    };

    unsigned degree_ = 0;
    Word modulus_low_ = 0;  // modulus with the x^m term dropped
    Word generator_ = 0;    // 0 when not computed (degree > kMaxGeneratorDegree)
    std::shared_ptr<const Tables> tables_;  // built for degree <= 16
};

/// An element of a specific GF(2^m). Carries its field, so cross-field
/// operations can be rejected.
class FieldElement {
public:
    FieldElement(Word value, FieldSpec spec);

    Word value() const { return value_; }
    const FieldSpec& spec() const { return spec_; }

    bool operator==(const FieldElement& other) const {
        return value_ == other.value_ && spec_ == other.spec_;
    }

private:
    Word value_;
    FieldSpec spec_;
};

FieldElement gf_add(const FieldElement& a, const FieldElement& b);
FieldElement gf_mul(const FieldElement& a, const FieldElement& b);
FieldElement gf_inv(const FieldElement& a);
FieldElement gf_pow(const FieldElement& a, std::uint64_t e);

namespace detail {

/// Exact irreducibility test over GF(2) (Rabin): f of degree m is irreducible
/// iff x^(2^m) = x (mod f) and gcd(x^(2^(m/p)) - x, f) = 1 for every prime
/// p | m. Valid for every degree this library supports.
bool is_irreducible(unsigned degree, Wide modulus);

/// Lexicographically smallest irreducible polynomial of the given degree.
Wide smallest_irreducible(unsigned degree);

}  // namespace detail

}  // namespace ppmwt::gf
