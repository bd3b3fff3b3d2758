#include "ppmwt/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "ppmwt/errors.hpp"

namespace ppmwt::pipeline {

SchemeParams SchemeParams::make(double eta, double photon_budget, unsigned symbol_bits,
                                std::uint64_t k, std::uint64_t lambda) {
    if (!(eta > 0.5 && eta < 1.0))
        throw infeasible_error("transmissivity must lie in (0.5, 1)");
    if (!(photon_budget >= 0.0))
        throw infeasible_error("photon budget must be nonnegative");
    if (symbol_bits < 1 || symbol_bits > 62)
        throw infeasible_error("symbol width must be in [1, 62] bits");

    SchemeParams p;
    p.eta = eta;
    p.photon_budget = photon_budget;
    p.symbol_bits = symbol_bits;
    p.b = std::uint64_t(1) << symbol_bits;
    p.n = p.b - 1;
    p.pulse_energy = static_cast<double>(p.b) * photon_budget;
    if (k < 1 || k > p.n)
        throw infeasible_error("code dimension k must be in [1, n]");
    p.k = k;
    if (k > UINT64_MAX / symbol_bits || lambda > k * symbol_bits)
        throw infeasible_error("message length exceeds the source word");
    p.lambda = lambda;
    return p;
}

SchemeParams SchemeParams::from_pulse_energy(double eta, double pulse_energy,
                                             unsigned symbol_bits, std::uint64_t k,
                                             std::uint64_t lambda) {
    if (!(pulse_energy >= 0.0))
        throw infeasible_error("pulse energy must be nonnegative");
    const double b = std::ldexp(1.0, static_cast<int>(symbol_bits));
    return make(eta, pulse_energy / b, symbol_bits, k, lambda);
}

Scheme::Scheme(SchemeParams params)
    : params_(params),
      code_(rs::RSCodeSpec::make(params.symbol_bits, static_cast<unsigned>(params.k))),
      channel_(params.eta, params.pulse_energy, params.b) {
    if (params_.extractor_supported()) {
        ext_.emplace(gf::FieldSpec::standard(static_cast<unsigned>(params_.source_bits())),
                     static_cast<unsigned>(params_.lambda));
    } else if (params_.lambda > 0) {
        throw std::invalid_argument(
            "lambda > 0 requires the source word to fit in 64 bits (k * w <= 64)");
    }
}

std::vector<rs::Symbol> Scheme::unpack_source(gf::Word value) const {
    if (!params_.extractor_supported())
        throw std::invalid_argument("source word wider than 64 bits");
    const unsigned w = params_.symbol_bits;
    const gf::Word mask = code_.field.order_mask();
    std::vector<rs::Symbol> symbols(params_.k);
    for (std::uint64_t i = 0; i < params_.k; ++i)
        symbols[i] = (value >> (w * (params_.k - 1 - i))) & mask;
    return symbols;
}

gf::Word Scheme::pack_source(std::span<const rs::Symbol> symbols) const {
    if (!params_.extractor_supported())
        throw std::invalid_argument("source word wider than 64 bits");
    gf::Word value = 0;
    for (rs::Symbol s : symbols) value = (value << params_.symbol_bits) | s;
    return value;
}

Scheme::Encoded Scheme::alice_encode(const extractor::Message& message,
                                     const extractor::Seed& seed,
                                     const extractor::LocalRandomness& randomness) const {
    if (!ext_)
        throw std::invalid_argument("scheme instance has no extractor (k * w > 64)");
    extractor::SourceWord source = extractor::invert(message, seed, randomness, *ext_);
    std::vector<rs::Symbol> symbols = unpack_source(source.value.value());
    rs::Codeword codeword = rs_encode(symbols, code_);
    return Encoded{std::move(source), std::move(symbols), std::move(codeword)};
}

DecodeOutput Scheme::bob_decode(const rs::ErasureWord& received,
                                const extractor::Seed& seed) const {
    if (!ext_)
        throw std::invalid_argument("scheme instance has no extractor (k * w > 64)");
    rs::DecodeResult decoded = rs::rs_decode_erasures(received, code_);
    DecodeOutput out;
    out.erasures = decoded.erasures;
    if (!decoded.ok()) {
        out.failure = decoded.failure;
        return out;
    }
    const gf::Word packed = pack_source(*decoded.message);
    const extractor::SourceWord word{gf::FieldElement(packed, ext_->field)};
    out.message = extractor::extract(word, seed, *ext_);
    return out;
}

TransmissionRecord Scheme::run_one(std::uint64_t rng_seed, std::uint64_t trial_index) const {
    RandomStream rng(rng_seed, trial_index);
    TransmissionRecord rec;

    if (ext_) {
        const unsigned m = ext_->input_bits();
        rec.message = extractor::Message{rng.bits(ext_->lambda), ext_->lambda};
        rec.seed_value = 1 + rng.below(ext_->field.order_mask());
        const extractor::LocalRandomness r{rng.bits(m - ext_->lambda),
                                           m - ext_->lambda};
        const extractor::Seed seed(gf::FieldElement(rec.seed_value, ext_->field));
        Encoded enc = alice_encode(rec.message, seed, r);
        rec.source_symbols = std::move(enc.source_symbols);
        rec.codeword = std::move(enc.codeword);
    } else {
        rec.source_symbols.resize(params_.k);
        for (auto& s : rec.source_symbols) s = rng.bits(params_.symbol_bits);
        rec.codeword = rs_encode(rec.source_symbols, code_);
    }

    rec.bob_output.resize(params_.n);
    rec.eve_records.resize(params_.n);
    for (std::uint64_t i = 0; i < params_.n; ++i) {
        const auto pos = channel::modulate(rec.codeword[i], params_.b);
        const auto outcome = channel::transmit_frame(pos, channel_, rng);
        if (outcome.bob.pulse_position)
            rec.bob_output[i] = channel::demodulate(*outcome.bob.pulse_position, params_.b);
        rec.eve_records[i] = outcome.eve;
    }

    if (ext_) {
        const extractor::Seed seed(gf::FieldElement(rec.seed_value, ext_->field));
        DecodeOutput out = bob_decode(rec.bob_output, seed);
        rec.erasures = out.erasures;
        rec.failure = out.failure;
        rec.decoded = out.message;
        rec.error = !out.message.has_value() || !(*out.message == rec.message);
    } else {
        rs::DecodeResult out = rs::rs_decode_erasures(rec.bob_output, code_);
        rec.erasures = out.erasures;
        if (out.ok()) {
            rec.decoded_symbols = std::move(*out.message);
            rec.error = !(*rec.decoded_symbols == rec.source_symbols);
        } else {
            rec.failure = out.failure;
            rec.error = true;
        }
    }
    return rec;
}

TrialStats Scheme::run_trials(std::uint64_t trials, std::uint64_t rng_seed,
                              unsigned workers,
                              std::vector<TransmissionRecord>* records) const {
    if (trials < 1) throw std::invalid_argument("at least one trial is required");
    workers = std::clamp<unsigned>(workers, 1, 256);
    if (workers > trials) workers = static_cast<unsigned>(trials);
    if (records) records->assign(trials, TransmissionRecord{});

    std::vector<std::uint64_t> errors_per_worker(workers, 0);
    auto run_range = [&](unsigned widx, std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t errors = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
            TransmissionRecord rec = run_one(rng_seed, t);
            errors += rec.error ? 1 : 0;
            if (records) (*records)[t] = std::move(rec);
        }
        errors_per_worker[widx] = errors;
    };

    if (workers == 1) {
        run_range(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = trials / workers;
        const std::uint64_t extra = trials % workers;
        std::uint64_t lo = 0;
        for (unsigned widx = 0; widx < workers; ++widx) {
            const std::uint64_t hi = lo + chunk + (widx < extra ? 1 : 0);
            pool.emplace_back(run_range, widx, lo, hi);
            lo = hi;
        }
        for (auto& t : pool) t.join();
    }

    TrialStats stats;
    stats.trials = trials;
    for (std::uint64_t e : errors_per_worker) stats.errors += e;
    stats.error_rate = static_cast<double>(stats.errors) / static_cast<double>(trials);
    stats.radius_3sigma =
        3.0 * std::sqrt(std::max(stats.error_rate * (1.0 - stats.error_rate), 0.0) /
                        static_cast<double>(trials));
    return stats;
}

double Scheme::classical_secrecy_oracle() const {
    if (!ext_)
        throw std::invalid_argument("secrecy oracle requires the extractor (k * w <= 64)");
    const unsigned m = ext_->input_bits();
    const unsigned lam = ext_->lambda;
    const unsigned n = static_cast<unsigned>(params_.n);

    // messages x seeds x randomness x detection patterns
    const long double states = std::ldexp(1.0L, static_cast<int>(m)) *
                               (std::ldexp(1.0L, static_cast<int>(m)) - 1.0L) *
                               std::ldexp(1.0L, static_cast<int>(n));
    if (m > 62 || n > 62 || states > 16777216.0L)
        throw std::invalid_argument("secrecy oracle state space exceeds 2^24");

    // record keys are base-(b+1) digit strings of length n, packed with the seed
    const double key_bits = n * std::log2(static_cast<double>(params_.b) + 1.0) + m;
    if (key_bits > 62.0)
        throw std::invalid_argument("secrecy oracle record alphabet too large to enumerate");

    const double p_eve = -std::expm1(-(1.0 - params_.eta) * params_.pulse_energy);
    std::vector<double> mask_prob(n + 1);
    for (unsigned w = 0; w <= n; ++w)
        mask_prob[w] = std::pow(p_eve, w) * std::pow(1.0 - p_eve, n - w);

    const std::uint64_t seeds = ext_->field.order_mask();
    const std::uint64_t num_messages = std::uint64_t(1) << lam;
    const std::uint64_t num_rand = std::uint64_t(1) << (m - lam);
    // P(message) * P(randomness) * P(seed), identical for every atom
    const double atom = 1.0 / (std::ldexp(1.0, static_cast<int>(m)) *
                               static_cast<double>(seeds));

    std::unordered_map<std::uint64_t, std::size_t> column_of;
    std::vector<std::vector<double>> columns;  // columns[col][msg]

    for (std::uint64_t seed_value = 1; seed_value <= seeds; ++seed_value) {
        const extractor::Seed seed(gf::FieldElement(seed_value, ext_->field));
        for (std::uint64_t msg = 0; msg < num_messages; ++msg) {
            for (std::uint64_t r = 0; r < num_rand; ++r) {
                const Encoded enc =
                    alice_encode(extractor::Message{msg, lam}, seed,
                                 extractor::LocalRandomness{r, m - lam});
                for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
                    std::uint64_t key = seed_value;
                    for (unsigned i = 0; i < n; ++i) {
                        const std::uint64_t digit =
                            ((mask >> i) & 1) ? enc.codeword[i] + 1 : 0;
                        key = key * (params_.b + 1) + digit;
                    }
                    auto [it, fresh] = column_of.try_emplace(key, columns.size());
                    if (fresh) columns.emplace_back(num_messages, 0.0);
                    columns[it->second][msg] += atom * mask_prob[std::popcount(mask)];
                }
            }
        }
    }

    std::vector<std::vector<double>> joint(num_messages,
                                           std::vector<double>(columns.size()));
    for (std::size_t col = 0; col < columns.size(); ++col)
        for (std::uint64_t msg = 0; msg < num_messages; ++msg)
            joint[msg][col] = columns[col][msg];
    return extractor::statistical_distance_to_uniform(joint);
}

}  // namespace ppmwt::pipeline
