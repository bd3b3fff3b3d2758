#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ppmwt/channel.hpp"
#include "ppmwt/extractor.hpp"
#include "ppmwt/random.hpp"
#include "ppmwt/rscode.hpp"

namespace ppmwt::pipeline {

/// Complete parameter set of one scheme instance. Invariants: b = 2^w,
/// n = b - 1, 1 <= k <= n, alpha^2 = b * E, lambda <= k * w. Pure data; large
/// alphabets (up to 2^63) are representable so the bound calculator can reason
/// about them, while simulation additionally requires w <= rs::kMaxSymbolBits.
struct SchemeParams {
    double eta = 0.0;           // transmissivity
    double photon_budget = 0.0; // E, mean photons per channel use
    double pulse_energy = 0.0;  // alpha^2 = b * E
    unsigned symbol_bits = 0;   // w
    std::uint64_t b = 0;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t lambda = 0;   // message length in bits

    static SchemeParams make(double eta, double photon_budget, unsigned symbol_bits,
                             std::uint64_t k, std::uint64_t lambda);
    /// Same, but parameterized by the per-pulse energy (E = alpha^2 / b).
    static SchemeParams from_pulse_energy(double eta, double pulse_energy,
                                          unsigned symbol_bits, std::uint64_t k,
                                          std::uint64_t lambda);

    /// Bit length of the expanded source word L (= k * w).
    std::uint64_t source_bits() const { return k * symbol_bits; }
    /// Total channel uses of one transmission, n * b (as double: the product
    /// can exceed 64 bits for bound-analysis alphabets).
    double channel_uses() const {
        return static_cast<double>(n) * static_cast<double>(b);
    }
    /// The hashing layer operates on machine words, so it is available
    /// exactly when L fits in 64 bits. Larger instances run trials at the
    /// source-word level, which leaves the error event unchanged: the hash
    /// round trip is an identity on every successful decode.
    bool extractor_supported() const { return source_bits() <= 64; }

    bool operator==(const SchemeParams&) const = default;
};

/// One fully simulated transmission.
struct TransmissionRecord {
    extractor::Message message;              // lambda bits ({0,0} in symbol-level mode)
    std::uint64_t seed_value = 0;            // 0 in symbol-level mode
    std::vector<rs::Symbol> source_symbols;  // L as k GF(b) symbols
    rs::Codeword codeword;
    rs::ErasureWord bob_output;
    std::vector<channel::EveRecord> eve_records;
    std::optional<extractor::Message> decoded;
    std::optional<std::vector<rs::Symbol>> decoded_symbols;
    std::optional<rs::DecodeFailure> failure;
    unsigned erasures = 0;
    bool error = false;

    bool operator==(const TransmissionRecord&) const = default;
};

struct DecodeOutput {
    std::optional<extractor::Message> message;
    std::optional<rs::DecodeFailure> failure;  // set exactly when message is not
    unsigned erasures = 0;
};

struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double error_rate = 0.0;
    double radius_3sigma = 0.0;  // 3 * sqrt(p(1-p)/N) at the empirical rate
};

/// A materialized scheme instance: field, code, extractor and channel wired
/// together. Construction validates that the instance is simulatable
/// (w <= rs::kMaxSymbolBits; lambda > 0 additionally needs k*w <= 64).
/// All methods are const and safe for concurrent use; stochastic ones take
/// explicit random streams.
class Scheme {
public:
    explicit Scheme(SchemeParams params);

    const SchemeParams& params() const { return params_; }
    const rs::RSCodeSpec& code() const { return code_; }
    const channel::ChannelParams& channel_params() const { return channel_; }
    const std::optional<extractor::ExtractorSpec>& extractor_spec() const { return ext_; }

    struct Encoded {
        extractor::SourceWord source;
        std::vector<rs::Symbol> source_symbols;
        rs::Codeword codeword;
    };

    /// Alice: expand the message through the inverter, then encode the
    /// expanded word with the Reed-Solomon code.
    Encoded alice_encode(const extractor::Message& message, const extractor::Seed& seed,
                         const extractor::LocalRandomness& randomness) const;

    /// Bob: erasure-decode, then apply the extractor. Fails exactly when the
    /// Reed-Solomon decoder fails; the failure is tagged with the erasure
    /// count.
    DecodeOutput bob_decode(const rs::ErasureWord& received,
                            const extractor::Seed& seed) const;

    /// One complete trial, a pure function of (rng_seed, trial_index): fresh
    /// (message, seed, randomness) -> encode -> per-frame transmission ->
    /// decode. With the extractor active the error event is a message
    /// mismatch; at the symbol level it is a source-word mismatch. Both occur
    /// exactly when more than n - k frames erase.
    TransmissionRecord run_one(std::uint64_t rng_seed, std::uint64_t trial_index) const;

    /// Monte-Carlo error rate over `trials` transmissions. Trials are sharded
    /// across `workers` threads; each trial derives its own substream from
    /// (rng_seed, index), so results are bit-identical for every worker
    /// count. Optionally collects every record.
    TrialStats run_trials(std::uint64_t trials, std::uint64_t rng_seed,
                          unsigned workers = 1,
                          std::vector<TransmissionRecord>* records = nullptr) const;

    /// Exact statistical distance between the joint distribution of
    /// (message, seed, eavesdropper record) under the classical-proxy
    /// eavesdropper and the ideal uniform-message product, computed by full
    /// enumeration. A lower-bound sanity check for the analytic secrecy
    /// bound: the classical adversary is weaker than the one the bound
    /// assumes. Throws std::invalid_argument when the state space
    /// (messages x seeds x randomness x detection patterns) exceeds 2^24.
    double classical_secrecy_oracle() const;

    /// Fixed bijection between L in GF(2)^(k*w) and GF(b)^k: symbol 0
    /// occupies the most significant w bits; symbol i is the coefficient of
    /// x^i of the code polynomial.
    std::vector<rs::Symbol> unpack_source(gf::Word value) const;
    gf::Word pack_source(std::span<const rs::Symbol> symbols) const;

private:
    SchemeParams params_;
    rs::RSCodeSpec code_;
    channel::ChannelParams channel_;
    std::optional<extractor::ExtractorSpec> ext_;
};

}  // namespace ppmwt::pipeline
