#include "ppmwt/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "ppmwt/errors.hpp"

namespace ppmwt::channel {

ChannelParams::ChannelParams(double eta_, double pulse_energy_, std::uint64_t frame_len_)
    : eta(eta_), pulse_energy(pulse_energy_), frame_len(frame_len_) {
    if (!(eta > 0.5 && eta < 1.0))
        throw infeasible_error("transmissivity must lie in (0.5, 1)");
    if (!(pulse_energy >= 0.0))
        throw infeasible_error("pulse energy must be nonnegative");
    if (frame_len < 1) throw infeasible_error("frame length must be positive");
}

double erasure_probability(const ChannelParams& params) {
    return std::exp(-params.eta * params.pulse_energy);
}

FrameOutcome transmit_frame(std::uint64_t position, const ChannelParams& params,
                            RandomStream& rng) {
    if (position < 1 || position > params.frame_len)
        throw std::invalid_argument("pulse position outside the frame");

    const double p_bob = -std::expm1(-params.eta * params.pulse_energy);
    const double p_eve = -std::expm1(-(1.0 - params.eta) * params.pulse_energy);

    FrameOutcome outcome;
    if (rng.bernoulli(p_bob)) outcome.bob.pulse_position = position;
    if (rng.bernoulli(p_eve)) outcome.eve.pulse_position = position;
    return outcome;
}

std::uint64_t modulate(rs::Symbol symbol, std::uint64_t frame_len) {
    if (symbol >= frame_len)
        throw std::invalid_argument("symbol value outside the frame alphabet");
    return symbol + 1;
}

rs::Symbol demodulate(std::uint64_t position, std::uint64_t frame_len) {
    if (position < 1 || position > frame_len)
        throw std::invalid_argument("pulse position outside the frame");
    return position - 1;
}

}  // namespace ppmwt::channel
