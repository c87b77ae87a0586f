#include <doctest.h>

#include <cmath>

#include "goldens.hpp"
#include "rrdps/channel.hpp"
#include "rrdps/math.hpp"
#include "rrdps/rng.hpp"

using namespace rrdps;

TEST_CASE("transmittance") {
    CHECK(transmittance(table1_params(16, 0.0)) == 1.0);
    // alpha * z / 10 = 1 exactly
    CHECK(transmittance(table1_params(16, 50.0)) ==
          doctest::Approx(0.1).epsilon(1e-15));
    CHECK(transmittance(table1_params(16, 30.0)) ==
          doctest::Approx(goldens::kTransmit_02_30).epsilon(1e-14));
}

TEST_CASE("table1 preset wiring") {
    const ChannelParams p = table1_params(16, 30.0);
    CHECK(p.dark_rate == doctest::Approx(1.7e-6 * 16).epsilon(1e-15));
    CHECK(p.misalignment == 0.033);
    CHECK(p.background_error == 0.5);
    CHECK(p.detector_eff == 0.045);
    CHECK(p.loss_coeff == 0.2);
    CHECK(p.corr_eff == 1.16);
    CHECK(channel_preset("table1", 16, 30.0).has_value());
    CHECK_FALSE(channel_preset("nope", 16, 30.0).has_value());
}

TEST_CASE("gain edge cases and golden value") {
    ChannelParams p = table1_params(16, 30.0);
    SUBCASE("no light, no darks") {
        p.dark_rate = 0.0;
        CHECK(gain(0.0, p) == 0.0);
    }
    SUBCASE("dark counts only") {
        CHECK(gain(0.0, p) == doctest::Approx(p.dark_rate).epsilon(1e-15));
    }
    SUBCASE("golden at table1, L=16, z=30, x=0.5") {
        CHECK(gain(0.5, p) ==
              doctest::Approx(goldens::kGain_t1_z30_x05).epsilon(1e-13));
    }
}

TEST_CASE("qber edge cases and golden value") {
    ChannelParams p = table1_params(16, 30.0);
    SUBCASE("collapses to misalignment without darks") {
        p.dark_rate = 0.0;
        CHECK(qber(0.5, p) ==
              doctest::Approx(p.misalignment).epsilon(1e-13));
    }
    SUBCASE("background-only errors at x = 0") {
        CHECK(qber(0.0, p) ==
              doctest::Approx(p.background_error).epsilon(1e-13));
    }
    SUBCASE("golden at table1, L=16, z=30, x=0.5") {
        CHECK(qber(0.5, p) ==
              doctest::Approx(goldens::kQber_t1_z30_x05).epsilon(1e-13));
    }
    SUBCASE("undefined when the gain vanishes") {
        p.dark_rate = 0.0;
        CHECK_THROWS_AS(qber(0.0, p), std::domain_error);
    }
}

TEST_CASE("yield edge cases") {
    ChannelParams p = table1_params(16, 30.0);
    CHECK(yield_k(0, p) == doctest::Approx(p.dark_rate).epsilon(1e-15));

    ChannelParams perfect = p;
    perfect.dark_rate = 0.0;
    perfect.loss_coeff = 0.0;
    perfect.detector_eff = 1.0;
    CHECK(yield_k(1, perfect) == 1.0);
    CHECK(yield_k(5, perfect) == 1.0);
}

TEST_CASE("series consistency of yields against the closed-form gain") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const double x = rng.uniform(0.0, 1.2);
        const double z = rng.uniform(0.0, 120.0);
        const ChannelParams p = table1_params(16, z);
        const int cutoff = std::max(3, poisson_cutoff(x, 1e-12));
        double series = 0.0;
        for (int k = 0; k <= cutoff; ++k) {
            series += poisson_pmf(k, x) * yield_k(k, p);
        }
        CHECK(std::abs(series - gain(x, p)) < 1e-10);
    }
}

TEST_CASE("error series reproduces the qber numerator") {
    // e_k y_k := e_d (1-p_d)(1-(1-eta)^k) + e_0 p_d reproduces the closed
    // form when Poisson averaged.
    Rng rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        const double x = rng.uniform(0.01, 1.2);
        const double z = rng.uniform(0.0, 120.0);
        const ChannelParams p = table1_params(16, z);
        const double eta = transmittance(p).value() * p.detector_eff;
        const int cutoff = std::max(3, poisson_cutoff(x, 1e-12));
        double series = 0.0;
        for (int k = 0; k <= cutoff; ++k) {
            const double ek_yk =
                p.misalignment * (1.0 - p.dark_rate) *
                    (1.0 - std::pow(1.0 - eta, k)) +
                p.background_error * p.dark_rate;
            series += poisson_pmf(k, x) * ek_yk;
        }
        const double closed = qber(x, p).value() * gain(x, p).value();
        CHECK(std::abs(series - closed) < 1e-10);
    }
}

TEST_CASE("gain is strictly increasing in intensity") {
    const ChannelParams p = table1_params(16, 30.0);
    double prev = gain(0.0, p);
    for (double x = 0.05; x <= 1.0; x += 0.05) {
        const double g = gain(x, p);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("observe fills per-source gains and qbers") {
    const auto e = SourceEnsemble::with_common_delta(0.5, 0.1, 0.05, 0.01, 0.05);
    const ChannelParams p = table1_params(16, 30.0);
    const ObservedStats obs = observe(e, p);
    CHECK(obs.gain_of(SourceId::signal) == gain(0.5, p).value());
    CHECK(obs.gain_of(SourceId::decoy3) == gain(0.01, p).value());
    CHECK(obs.qber_of(SourceId::decoy1) == qber(0.1, p).value());
    for (int s = 0; s < 4; ++s) {
        CHECK(obs.qber[s] <= 0.5 + 1e-12);
        CHECK(obs.gain[s] >= p.dark_rate - 1e-15);
    }
}

TEST_CASE("channel parameter validation") {
    ChannelParams p = table1_params(16, 30.0);
    p.train_len = 1;
    CHECK_THROWS_AS(validate(p), std::domain_error);
    p = table1_params(16, 30.0);
    p.corr_eff = 0.9;
    CHECK_THROWS_AS(validate(p), std::domain_error);
    p = table1_params(16, 30.0);
    p.misalignment = -0.1;
    CHECK_THROWS_AS(validate(p), std::domain_error);
}
