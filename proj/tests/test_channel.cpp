#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "vlc/channel.hpp"
#include "vlc/errors.hpp"

using namespace vlc;

TEST_CASE("white-only interference is an all-zero buffer") {
    SampleBuffer b = generate_interference(WhiteOnly{}, 64, 1e6, RngSeed{1, 2});
    for (double v : b.samples) CHECK(v == 0.0);
}

TEST_CASE("identical (spec, seed) pairs generate bit-identical buffers") {
    AutoRegressive ar{{0.7, -0.2}, 1.0};
    SampleBuffer a = generate_interference(ar, 5000, 1e6, RngSeed{9, 3});
    SampleBuffer b = generate_interference(ar, 5000, 1e6, RngSeed{9, 3});
    CHECK(a.samples == b.samples);
    SampleBuffer c = generate_interference(ar, 5000, 1e6, RngSeed{9, 4});
    CHECK(a.samples != c.samples);
}

TEST_CASE("AR(1) long-run variance matches sigma^2 / (1 - a^2)") {
    AutoRegressive ar{{0.9}, 1.0};
    SampleBuffer b = generate_interference(ar, 100000, 1e6, RngSeed{11, 0});
    const double expected = 1.0 / (1.0 - 0.81);  // 5.2631...
    CHECK(power(b) == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("unstable AR specs are rejected before generating anything") {
    CHECK_THROWS_AS(generate_interference(AutoRegressive{{1.01}, 1.0}, 10, 1e6, RngSeed{}),
                    StabilityError);
    // root exactly on the unit circle
    CHECK_THROWS_AS(generate_interference(AutoRegressive{{2.0, -1.0}, 1.0}, 10, 1e6, RngSeed{}),
                    StabilityError);
    CHECK(ar_is_stable({1.2, -0.5}));
    CHECK_FALSE(ar_is_stable({1.0}));
}

TEST_CASE("single-harmonic hum stays below its amplitude and carries B^2/2 power") {
    const double B = 0.8;
    HarmonicHum hum{100.0, {B}, {0.3}};
    SampleBuffer b = generate_interference(hum, 1000000, 1e6, RngSeed{5, 5});
    CHECK(oracles::max_abs(b.samples) <= B + 1e-12);
    CHECK(power(b) == doctest::Approx(B * B / 2.0).epsilon(0.02));
}

TEST_CASE("hum harmonics must stay below Nyquist") {
    HarmonicHum hum{300000.0, {1.0, 1.0}, {}};  // second harmonic at 600 kHz
    CHECK_THROWS_AS(generate_interference(hum, 10, 1e6, RngSeed{}), ConfigError);
}

TEST_CASE("closed-form powers match long-run empirical powers within 2%") {
    const double fs = 1e6;
    Composite mix;
    mix.components.push_back(AutoRegressive{{1.2, -0.5}, 0.4});
    mix.components.push_back(HarmonicHum{1700.0, {0.9, 0.45}, {0.6, 2.5}});
    mix.components.push_back(DcAmbient{0.35});
    const std::vector<InterferenceSpec> specs = {
        AutoRegressive{{0.95}, 0.5},
        AutoRegressive{{1.2, -0.5}, 1.0},
        AutoRegressive{{}, 0.8},  // order 0 degenerates to white driving noise
        HarmonicHum{1700.0, {1.0, 0.5}, {0.0, 1.0}},
        DcAmbient{0.7},
        mix,
    };
    std::uint64_t stream = 0;
    for (const auto& spec : specs) {
        SampleBuffer b = generate_interference(spec, 1000000, fs, RngSeed{77, stream++});
        CHECK(power(b) == doctest::Approx(interference_power(spec)).epsilon(0.02));
    }
}

TEST_CASE("ar_theoretical_acf agrees with the AR(1) closed form") {
    const double a = 0.9, s = 1.3;
    auto acf = ar_theoretical_acf({a}, s, 6);
    const double r0 = s * s / (1.0 - a * a);
    for (int m = 0; m <= 6; ++m)
        CHECK(acf[static_cast<std::size_t>(m)] == doctest::Approx(r0 * std::pow(a, m)).epsilon(1e-12));
}

TEST_CASE("scale_interference scales every amplitude-dimensioned field") {
    Composite mix;
    mix.components.push_back(AutoRegressive{{0.9}, 0.5});
    mix.components.push_back(HarmonicHum{100.0, {1.0}, {}});
    mix.components.push_back(DcAmbient{2.0});
    InterferenceSpec scaled = scale_interference(mix, 0.5);
    // power scales with the square of the amplitude factor
    CHECK(interference_power(scaled) == doctest::Approx(0.25 * interference_power(mix)));
}

TEST_CASE("obstructed captures are white") {
    NoiseSpec noise{1.0};
    SampleBuffer b = acquire_obstructed(noise, 100000, 1e6, RngSeed{21, 9});
    auto acf = oracles::sample_acf(b.samples, 10);
    CHECK(acf[0] == doctest::Approx(1.0).epsilon(0.05));
    const double bound = 3.0 / std::sqrt(100000.0);
    for (int m = 1; m <= 10; ++m) CHECK(std::fabs(acf[static_cast<std::size_t>(m)] / acf[0]) < bound);

    SampleBuffer again = acquire_obstructed(noise, 100000, 1e6, RngSeed{21, 9});
    CHECK(b.samples == again.samples);

    SampleBuffer silent = acquire_obstructed(NoiseSpec{0.0}, 100, 1e6, RngSeed{21, 9});
    for (double v : silent.samples) CHECK(v == 0.0);
}

TEST_CASE("noise-only acquisition adds white noise to the interference") {
    SampleBuffer b = acquire_noise_only(WhiteOnly{}, NoiseSpec{0.7}, 100000, 1e6, RngSeed{3, 3});
    CHECK(power(b) == doctest::Approx(0.49).epsilon(0.05));

    SampleBuffer zero = acquire_noise_only(WhiteOnly{}, NoiseSpec{0.0}, 100, 1e6, RngSeed{3, 3});
    for (double v : zero.samples) CHECK(v == 0.0);

    // the acquisition-length grid used for the statistics sweep
    for (long n : {10, 50, 100, 250, 500, 1000, 2000, 3000, 4000}) {
        SampleBuffer cap = acquire_noise_only(AutoRegressive{{0.9}, 1.0}, NoiseSpec{0.1},
                                              static_cast<std::size_t>(n), 1e6, RngSeed{8, 8});
        CHECK(cap.size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("acquisition and transmission noise streams are independent") {
    NoiseSpec noise{1.0};
    const std::size_t n = 100000;
    SampleBuffer acq = acquire_noise_only(WhiteOnly{}, noise, n, 1e6, RngSeed{55, 1});
    SampleBuffer x;
    x.sample_rate = 1e6;
    x.samples.assign(n, 0.0);
    SampleBuffer tx = transmit_through(x, ChannelModel{}, WhiteOnly{}, noise, RngSeed{55, 2});
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += acq[i] * tx[i];
    const double rho = dot / n / (std::sqrt(power(acq)) * std::sqrt(power(tx)));
    CHECK(std::fabs(rho) < 0.02);
}

TEST_CASE("transparent channel returns the input unchanged") {
    SampleBuffer x;
    x.sample_rate = 1e6;
    x.samples = {0.0, 1.0, 1.0, 0.0, 0.5, -0.25};
    SampleBuffer r = transmit_through(x, ChannelModel{}, WhiteOnly{}, NoiseSpec{0.0}, RngSeed{});
    CHECK(r.samples == x.samples);
}

TEST_CASE("gain scales the signal before noise is added") {
    SampleBuffer x;
    x.sample_rate = 1e6;
    x.samples = {1.0, 2.0, -4.0};
    ChannelModel ch;
    ch.gain = 0.5;
    SampleBuffer r = transmit_through(x, ch, WhiteOnly{}, NoiseSpec{0.0}, RngSeed{});
    CHECK(r.samples == std::vector<double>{0.5, 1.0, -2.0});
}

TEST_CASE("delay and impulse response shift and shape the signal") {
    SampleBuffer x;
    x.sample_rate = 1e6;
    x.samples = {1.0, 0.0, 0.0, 0.0};
    ChannelModel ch;
    ch.delay_samples = 2;
    ch.impulse_response = {1.0, 0.5};
    SampleBuffer r = transmit_through(x, ch, WhiteOnly{}, NoiseSpec{0.0}, RngSeed{});
    REQUIRE(r.size() == 6);
    CHECK(r.samples == std::vector<double>{0.0, 0.0, 1.0, 0.5, 0.0, 0.0});
}

TEST_CASE("distance surrogate follows the inverse-square law") {
    CHECK(distance_gain(4.0, 2.0) == doctest::Approx(1.0));
    CHECK(distance_gain(4.0, 4.0) == doctest::Approx(0.25));
    CHECK(distance_gain(4.0, 8.0) == doctest::Approx(0.0625));
    CHECK_THROWS_AS(distance_gain(1.0, 0.0), ConfigError);
}
