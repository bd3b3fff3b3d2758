#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <ppmwt/channel.hpp>
#include <ppmwt/errors.hpp>
#include <ppmwt/random.hpp>

using namespace ppmwt;
using channel::ChannelParams;

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ChannelParams(0.5, 1.0, 8), infeasible_error);
    CHECK_THROWS_AS(ChannelParams(1.0, 1.0, 8), infeasible_error);
    CHECK_THROWS_AS(ChannelParams(0.8, -0.1, 8), infeasible_error);
    CHECK_NOTHROW(ChannelParams(0.8, 0.0, 8));
}

TEST_CASE("erasure probability is exp(-eta alpha^2)") {
    CHECK(channel::erasure_probability(ChannelParams(0.8, 0.0, 8)) == 1.0);
    CHECK(channel::erasure_probability(ChannelParams(0.8, 0.1024, 1024)) ==
          doctest::Approx(0.92135).epsilon(1e-5));
    // monotone decay toward zero as the pulse gets brighter
    double previous = 1.0;
    for (double a2 : {0.5, 2.0, 8.0, 32.0, 128.0, 512.0}) {
        const double q = channel::erasure_probability(ChannelParams(0.9, a2, 8));
        CHECK(q < previous);
        previous = q;
    }
    CHECK(previous < 1e-100);
}

TEST_CASE("a vacuum pulse is never detected by either side") {
    const ChannelParams params(0.7, 0.0, 16);
    RandomStream rng(3);
    for (int t = 0; t < 1000; ++t) {
        const auto out = channel::transmit_frame(5, params, rng);
        CHECK_FALSE(out.bob.pulse_position.has_value());
        CHECK_FALSE(out.eve.pulse_position.has_value());
    }
}

TEST_CASE("detections always report the transmitted position") {
    const ChannelParams params(0.8, 3.0, 32);
    RandomStream rng(4);
    for (std::uint64_t pos = 1; pos <= 32; ++pos) {
        for (int t = 0; t < 200; ++t) {
            const auto out = channel::transmit_frame(pos, params, rng);
            if (out.bob.pulse_position) CHECK(*out.bob.pulse_position == pos);
            if (out.eve.pulse_position) CHECK(*out.eve.pulse_position == pos);
        }
    }
    CHECK_THROWS_AS(channel::transmit_frame(0, params, rng), std::invalid_argument);
    CHECK_THROWS_AS(channel::transmit_frame(33, params, rng), std::invalid_argument);
}

TEST_CASE("empirical erasure rate matches the closed form within 4 sigma") {
    const ChannelParams params(0.8, 1.2, 8);
    const double q = channel::erasure_probability(params);
    const int trials = 1000000;
    RandomStream rng(42);
    int erased = 0, eve_detect = 0;
    for (int t = 0; t < trials; ++t) {
        const auto out = channel::transmit_frame(1, params, rng);
        erased += !out.bob.pulse_position.has_value();
        eve_detect += out.eve.pulse_position.has_value();
    }
    const double tolerance = 4.0 * std::sqrt(q * (1.0 - q) / trials);
    CHECK(std::abs(static_cast<double>(erased) / trials - q) <= tolerance);

    const double p_eve = -std::expm1(-(1.0 - params.eta) * params.pulse_energy);
    const double tol_eve = 4.0 * std::sqrt(p_eve * (1.0 - p_eve) / trials);
    CHECK(std::abs(static_cast<double>(eve_detect) / trials - p_eve) <= tol_eve);
}

TEST_CASE("modulation is the fixed bijection symbol + 1") {
    CHECK(channel::modulate(0, 8) == 1);
    CHECK(channel::modulate(7, 8) == 8);
    CHECK_THROWS_AS(channel::modulate(8, 8), std::invalid_argument);
    CHECK_THROWS_AS(channel::demodulate(0, 8), std::invalid_argument);
    CHECK_THROWS_AS(channel::demodulate(9, 8), std::invalid_argument);

    for (std::uint64_t b : {8ull, 64ull, 256ull}) {
        std::vector<bool> hit(b + 1, false);
        for (rs::Symbol s = 0; s < b; ++s) {
            const auto pos = channel::modulate(s, b);
            CHECK(pos >= 1);
            CHECK(pos <= b);
            CHECK(channel::demodulate(pos, b) == s);
            CHECK_FALSE(hit[pos]);
            hit[pos] = true;
        }
    }
}
