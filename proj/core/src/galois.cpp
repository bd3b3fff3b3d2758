#include "ppmwt/galois.hpp"

#include <stdexcept>

namespace ppmwt::gf {
namespace {

// degree of a nonzero polynomial
unsigned poly_degree(Wide p) {
    unsigned d = 0;
    while (p >>= 1) ++d;
    return d;
}

Wide poly_mod(Wide a, Wide b) {
    const unsigned db = poly_degree(b);
    while (a != 0) {
        const unsigned da = poly_degree(a);
        if (da < db) break;
        a ^= b << (da - db);
    }
    return a;
}

Wide poly_gcd(Wide a, Wide b) {
    while (b != 0) {
        a = poly_mod(a, b);
        const Wide t = a;
        a = b;
        b = t;
    }
    return a;
}

// carry-less 64x64 -> 128 bit polynomial product
Wide clmul(Word a, Word b) {
    Wide acc = 0;
    Wide shifted = a;
    while (b != 0) {
        if (b & 1) acc ^= shifted;
        shifted <<= 1;
        b >>= 1;
    }
    return acc;
}

// reduce a product of degree <= 2m-2 modulo the field polynomial
Word reduce(Wide t, unsigned m, Wide modulus) {
    for (int i = 2 * static_cast<int>(m) - 2; i >= static_cast<int>(m); --i) {
        if ((t >> i) & 1) t ^= modulus << (i - m);
    }
    return static_cast<Word>(t);
}

Word mulmod(Word a, Word b, unsigned m, Wide modulus) {
    return reduce(clmul(a, b), m, modulus);
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> primes;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

std::vector<Word> prime_factors64(Word n) {
    std::vector<Word> primes;
    for (Word p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

Word pow_raw(Word base, Word e, unsigned m, Wide modulus) {
    Word result = 1;
    while (e != 0) {
        if (e & 1) result = mulmod(result, base, m, modulus);
        base = mulmod(base, base, m, modulus);
        e >>= 1;
    }
    return result;
}

// smallest primitive element of the multiplicative group (order 2^m - 1)
Word find_generator(unsigned m, Wide modulus) {
    const Word order = (m == 64) ? ~Word(0) : ((Word(1) << m) - 1);
    if (order == 1) return 1;
    const auto primes = prime_factors64(order);
    for (Word g = 2; g <= order; ++g) {
        bool primitive = true;
        for (Word p : primes) {
            if (pow_raw(g, order / p, m, modulus) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::logic_error("no primitive element found; modulus not irreducible?");
}

}  // namespace

namespace detail {

bool is_irreducible(unsigned degree, Wide modulus) {
    if (degree < 1 || degree > FieldSpec::kMaxDegree) return false;
    if ((modulus >> degree) != 1) return false;  // top bit, nothing above
    if (degree == 1) return true;
    if ((modulus & 1) == 0) return false;  // divisible by x

    // x^(2^degree) mod f via repeated squaring
    Word r = 2;  // the polynomial x
    for (unsigned i = 0; i < degree; ++i) r = mulmod(r, r, degree, modulus);
    if (r != 2) return false;

    for (unsigned p : prime_factors(degree)) {
        Word rr = 2;
        for (unsigned i = 0; i < degree / p; ++i) rr = mulmod(rr, rr, degree, modulus);
        const Wide h = Wide(rr) ^ Wide(2);  // x^(2^(degree/p)) - x
        if (h == 0) return false;
        if (poly_gcd(h, modulus) != 1) return false;
    }
    return true;
}

Wide smallest_irreducible(unsigned degree) {
    if (degree < 1 || degree > FieldSpec::kMaxDegree)
        throw std::invalid_argument("field degree must be in [1, 64]");
    const Wide top = Wide(1) << degree;
    for (Word low = 0;; ++low) {
        const Wide candidate = top | low;
        if (is_irreducible(degree, candidate)) return candidate;
        if (degree < 64 && low == ((Word(1) << degree) - 1)) break;
        if (degree == 64 && low == ~Word(0)) break;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace detail

FieldSpec FieldSpec::standard(unsigned degree) {
    return FieldSpec(degree, detail::smallest_irreducible(degree));
}

FieldSpec::FieldSpec(unsigned degree, Wide modulus) {
    if (degree < 1 || degree > kMaxDegree)
        throw std::invalid_argument("field degree must be in [1, 64]");
    if ((modulus >> degree) != 1)
        throw std::invalid_argument("modulus must have degree exactly m");
    if (!detail::is_irreducible(degree, modulus))
        throw std::invalid_argument("modulus is reducible over GF(2)");

    degree_ = degree;
    modulus_low_ = static_cast<Word>(modulus ^ (Wide(1) << degree));

    if (degree <= kMaxGeneratorDegree) generator_ = find_generator(degree, modulus);

    if (degree <= 16) {
        auto tables = std::make_shared<Tables>();
        const Word order = order_mask();
        tables->exp.resize(2 * static_cast<std::size_t>(order));
        tables->log.resize(static_cast<std::size_t>(order) + 1);
        Word value = 1;
        for (Word i = 0; i < order; ++i) {
            tables->exp[i] = value;
            tables->exp[i + order] = value;
            tables->log[value] = static_cast<std::uint32_t>(i);
            value = mulmod(value, generator_, degree, modulus);
        }
        tables_ = std::move(tables);
    }
}

Word FieldSpec::generator() const {
    if (generator_ == 0)
        throw std::domain_error("generator not computed for degree > 20");
    return generator_;
}

Word FieldSpec::mul_carryless(Word a, Word b) const {
    return mulmod(a, b, degree_, modulus());
}

Word FieldSpec::inv(Word a) const {
    if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
    if (tables_) {
        const Word order = order_mask();
        return tables_->exp[order - tables_->log[a]];
    }
    // Fermat: a^(2^m - 2)
    const Word order = order_mask();
    return pow(a, order - 1);
}

Word FieldSpec::pow(Word a, std::uint64_t e) const {
    Word result = 1;
    Word base = a;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElement::FieldElement(Word value, FieldSpec spec) : value_(value), spec_(std::move(spec)) {
    if (value_ > spec_.order_mask())
        throw std::invalid_argument("element value exceeds field size");
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!(a.spec() == b.spec()))
        throw std::invalid_argument("operands belong to different fields");
}
}  // namespace

FieldElement gf_add(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement(a.spec().add(a.value(), b.value()), a.spec());
}

FieldElement gf_mul(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement(a.spec().mul(a.value(), b.value()), a.spec());
}

FieldElement gf_inv(const FieldElement& a) {
    return FieldElement(a.spec().inv(a.value()), a.spec());
}

FieldElement gf_pow(const FieldElement& a, std::uint64_t e) {
    return FieldElement(a.spec().pow(a.value(), e), a.spec());
}

}  // namespace ppmwt::gf
