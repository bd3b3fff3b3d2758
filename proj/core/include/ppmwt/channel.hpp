#pragma once

#include <cstdint>
#include <optional>

#include "ppmwt/random.hpp"
#include "ppmwt/rscode.hpp"

namespace ppmwt::channel {

/// Physical parameters of the lossy optical channel as seen through direct
/// detection. A fraction eta of the pulse energy reaches the legitimate
/// receiver; the rest reaches the eavesdropper. No dark counts, no thermal
/// noise: a frame either reports the transmitted position or an erasure.
struct ChannelParams {
    double eta;           // transmissivity, in (0.5, 1)
    double pulse_energy;  // mean photon number alpha^2 of the pulse, >= 0
    std::uint64_t frame_len;  // positions per PPM frame (b)

    ChannelParams(double eta, double pulse_energy, std::uint64_t frame_len);
};

/// Detection outcome for one PPM frame: the pulse position (1-based) or
/// nothing when the detector never clicked.
struct Frame {
    std::optional<std::uint64_t> pulse_position;

    bool operator==(const Frame&) const = default;
};

/// Classical-proxy eavesdropper outcome for one frame. Used only by
/// desk-scale exhaustive secrecy oracles; the adversary of the analytic
/// bounds is strictly stronger.
struct EveRecord {
    std::optional<std::uint64_t> pulse_position;

    bool operator==(const EveRecord&) const = default;
};

struct FrameOutcome {
    Frame bob;
    EveRecord eve;
};

/// Probability that the receiver's detector reports an erasure for a frame:
/// q = exp(-eta * alpha^2).
double erasure_probability(const ChannelParams& params);

/// Send one frame with the pulse at `position` (1-based). The receiver
/// detects it with probability 1 - exp(-eta * alpha^2), the eavesdropper
/// proxy with probability 1 - exp(-(1 - eta) * alpha^2). The two draws are
/// independent: a coherent pulse split on a beam splitter leaves the two
/// output arms in a product state, so independence is exact, not an
/// approximation. Detected positions always equal the input position.
/// Draw order (receiver first, then eavesdropper) is fixed for
/// reproducibility.
FrameOutcome transmit_frame(std::uint64_t position, const ChannelParams& params,
                            RandomStream& rng);

/// Fixed bijection between GF(b) symbol values and pulse positions.
std::uint64_t modulate(rs::Symbol symbol, std::uint64_t frame_len);
rs::Symbol demodulate(std::uint64_t position, std::uint64_t frame_len);

}  // namespace ppmwt::channel
