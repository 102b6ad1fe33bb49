#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "vlc/rng.hpp"
#include "vlc/sample_buffer.hpp"

namespace vlc {

// Linear channel: r = gain * (x conv h) delayed by delay_samples. The
// impulse response's first tap applies at the delay offset; empty means a
// single unit tap (pure gain).
struct ChannelModel {
    double gain = 1.0;
    int delay_samples = 0;
    std::vector<double> impulse_response;

    void validate() const;
};

// Distance surrogate for the channel gain: g0 / d^2.
double distance_gain(double reference_gain, double distance_m);

// --- Interference generator families -------------------------------------
//
// The interference is parameterized by electrical amplitude; an ambient
// light level in lumen maps linearly onto it (amp = kappa * lumen), so
// sweeps over amplitude preserve the shape of sweeps over illuminance.

struct WhiteOnly {};  // no structured interference

// i[n] = Σ a_k i[n-k] + e[n], e white Gaussian of std driving_std.
struct AutoRegressive {
    std::vector<double> coefficients;
    double driving_std = 1.0;
};

// Σ_h B_h sin(2π h f0 t + φ_h). Phases default to zero when omitted.
struct HarmonicHum {
    double fundamental_hz = 100.0;
    std::vector<double> amplitudes;
    std::vector<double> phases;
};

struct DcAmbient {
    double level = 0.0;
};

struct Composite;

using InterferenceSpec =
    std::variant<WhiteOnly, AutoRegressive, HarmonicHum, DcAmbient, Composite>;

using AtomicInterference =
    std::variant<WhiteOnly, AutoRegressive, HarmonicHum, DcAmbient>;

// Sum of the atomic families above.
struct Composite {
    std::vector<AtomicInterference> components;
};

struct NoiseSpec {
    double awgn_std = 0.0;  // std of w[n]
};

// All roots of 1 - Σ a_k z^{-k} strictly inside the unit circle
// (step-down / Schur-Cohn test).
bool ar_is_stable(const std::vector<double>& coefficients);

// Exact stationary ACF of a stable AR process at lags 0..max_lag.
std::vector<double> ar_theoretical_acf(const std::vector<double>& coefficients,
                                       double driving_std, int max_lag);

// Closed-form stationary power. Composite components are summed, which
// assumes zero-mean independent or spectrally disjoint parts (a second DC
// term would violate it).
double interference_power(const InterferenceSpec& spec);

// All amplitude-dimensioned fields scaled by `factor`; the sweep axis
// `interference_amplitude` applies this to the base spec.
InterferenceSpec scale_interference(const InterferenceSpec& spec, double factor);

// Throws ConfigError / StabilityError-shaped failures on invalid specs.
void validate_interference(const InterferenceSpec& spec, double sample_rate);

// --- Signal synthesis -----------------------------------------------------

// Deterministic given (spec, length, seed). AR output discards a warm-up
// prefix of max(1000, 10*order) samples so draws come from the stationary
// distribution.
SampleBuffer generate_interference(const InterferenceSpec& spec, std::size_t length,
                                   double sample_rate, RngSeed seed);

// Noise-only acquisition capture y[n] = i[n] + w[n]; interference and AWGN
// use distinct sub-streams of `seed`.
SampleBuffer acquire_noise_only(const InterferenceSpec& spec, const NoiseSpec& noise,
                                std::size_t n_samples, double sample_rate, RngSeed seed);

// Obstructed-photodiode capture: pure white Gaussian noise.
SampleBuffer acquire_obstructed(const NoiseSpec& noise, std::size_t n_samples,
                                double sample_rate, RngSeed seed);

// Data-phase waveform r[n] = gain * (x conv h)[n - delay] + i[n] + w[n],
// length x.size() + delay. Pass a seed stream distinct from the acquisition
// captures so the realizations are independent.
SampleBuffer transmit_through(const SampleBuffer& x, const ChannelModel& ch,
                              const InterferenceSpec& spec, const NoiseSpec& noise,
                              RngSeed seed);

}  // namespace vlc
