#include "vlc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vlc/errors.hpp"

namespace vlc {

namespace {

constexpr std::uint64_t kInterferencePurpose = 0xA1;
constexpr std::uint64_t kAwgnPurpose = 0xA2;
constexpr std::uint64_t kCompositeChildPurpose = 0xC0;

// Partial-pivot Gaussian elimination for the small systems behind
// ar_theoretical_acf.
std::vector<double> solve_dense(std::vector<std::vector<double>> m, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
        if (m[pivot][col] == 0.0)
            throw StabilityError("AR stationarity system is singular");
        std::swap(m[pivot], m[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = m[row][col] / m[col][col];
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (std::size_t k = row + 1; k < n; ++k) acc -= m[row][k] * x[k];
        x[row] = acc / m[row][row];
    }
    return x;
}

void validate_atomic(const AtomicInterference& spec, double sample_rate);

struct Validator {
    double sample_rate;
    void operator()(const WhiteOnly&) const {}
    void operator()(const AutoRegressive& ar) const {
        if (!(ar.driving_std >= 0.0))
            throw ConfigError("AR driving_std must be nonnegative");
        if (!ar_is_stable(ar.coefficients))
            throw StabilityError("AR coefficients define an unstable process");
    }
    void operator()(const HarmonicHum& hum) const {
        if (!(hum.fundamental_hz > 0.0))
            throw ConfigError("hum fundamental must be positive");
        if (hum.amplitudes.empty())
            throw ConfigError("hum needs at least one harmonic amplitude");
        if (!hum.phases.empty() && hum.phases.size() != hum.amplitudes.size())
            throw ConfigError("hum phases must be empty or match the amplitude count");
        const double n_harm = static_cast<double>(hum.amplitudes.size());
        if (!(hum.fundamental_hz < sample_rate / 2.0 / n_harm))
            throw ConfigError("hum harmonics must stay below Nyquist: need f0 < fs/2/" +
                              std::to_string(hum.amplitudes.size()));
    }
    void operator()(const DcAmbient& dc) const {
        if (!std::isfinite(dc.level)) throw ConfigError("DC level must be finite");
    }
    void operator()(const Composite& c) const {
        for (const auto& child : c.components) validate_atomic(child, sample_rate);
    }
};

void validate_atomic(const AtomicInterference& spec, double sample_rate) {
    std::visit(Validator{sample_rate}, spec);
}

void generate_atomic(const AtomicInterference& spec, std::vector<double>& out,
                     double sample_rate, RngSeed seed);

struct PowerVisitor {
    double operator()(const WhiteOnly&) const { return 0.0; }
    double operator()(const AutoRegressive& ar) const {
        return ar_theoretical_acf(ar.coefficients, ar.driving_std, 0)[0];
    }
    double operator()(const HarmonicHum& hum) const {
        double p = 0.0;
        for (double b : hum.amplitudes) p += b * b / 2.0;
        return p;
    }
    double operator()(const DcAmbient& dc) const { return dc.level * dc.level; }
    double operator()(const Composite& c) const {
        double p = 0.0;
        for (const auto& child : c.components) p += std::visit(PowerVisitor{}, child);
        return p;
    }
};

struct Generator {
    std::vector<double>& out;  // accumulates: callers pre-zero the buffer
    double sample_rate;
    RngSeed seed;

    void operator()(const WhiteOnly&) const {}

    void operator()(const AutoRegressive& ar) const {
        const std::size_t p = ar.coefficients.size();
        Rng rng(seed);
        if (p == 0) {  // order 0: the process is its white driving noise
            for (double& v : out) v += rng.gaussian(ar.driving_std);
            return;
        }
        const std::size_t warmup = std::max<std::size_t>(1000, 10 * p);
        std::vector<double> state(p, 0.0);  // most recent first
        for (std::size_t n = 0; n < warmup + out.size(); ++n) {
            double v = rng.gaussian(ar.driving_std);
            for (std::size_t k = 0; k < p; ++k) v += ar.coefficients[k] * state[k];
            for (std::size_t k = p; k-- > 1;) state[k] = state[k - 1];
            state[0] = v;
            if (n >= warmup) out[n - warmup] += v;
        }
    }

    void operator()(const HarmonicHum& hum) const {
        const double base = 2.0 * std::numbers::pi * hum.fundamental_hz / sample_rate;
        for (std::size_t h = 0; h < hum.amplitudes.size(); ++h) {
            const double amp = hum.amplitudes[h];
            const double omega = base * static_cast<double>(h + 1);
            const double phase = h < hum.phases.size() ? hum.phases[h] : 0.0;
            for (std::size_t n = 0; n < out.size(); ++n)
                out[n] += amp * std::sin(omega * static_cast<double>(n) + phase);
        }
    }

    void operator()(const DcAmbient& dc) const {
        for (double& v : out) v += dc.level;
    }

    void operator()(const Composite& c) const {
        for (std::size_t i = 0; i < c.components.size(); ++i)
            generate_atomic(c.components[i], out, sample_rate,
                            derive_stream(seed, kCompositeChildPurpose + i));
    }
};

void generate_atomic(const AtomicInterference& spec, std::vector<double>& out,
                     double sample_rate, RngSeed seed) {
    std::visit(Generator{out, sample_rate, seed}, spec);
}

AtomicInterference scale_atomic(const AtomicInterference& atom, double factor) {
    return std::visit(
        [factor](auto s) -> AtomicInterference {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AutoRegressive>) {
                s.driving_std *= factor;
            } else if constexpr (std::is_same_v<T, HarmonicHum>) {
                for (double& b : s.amplitudes) b *= factor;
            } else if constexpr (std::is_same_v<T, DcAmbient>) {
                s.level *= factor;
            }
            return s;
        },
        atom);
}

struct ScaleVisitor {
    double factor;
    InterferenceSpec operator()(const WhiteOnly& w) const { return w; }
    InterferenceSpec operator()(const AutoRegressive& ar) const {
        return std::get<AutoRegressive>(scale_atomic(ar, factor));
    }
    InterferenceSpec operator()(const HarmonicHum& hum) const {
        return std::get<HarmonicHum>(scale_atomic(hum, factor));
    }
    InterferenceSpec operator()(const DcAmbient& dc) const {
        return std::get<DcAmbient>(scale_atomic(dc, factor));
    }
    InterferenceSpec operator()(Composite c) const {
        for (auto& child : c.components) child = scale_atomic(child, factor);
        return c;
    }
};

}  // namespace

void ChannelModel::validate() const {
    if (!(gain > 0.0)) throw ConfigError("channel gain must be positive");
    if (delay_samples < 0) throw ConfigError("channel delay must be nonnegative");
    for (double tap : impulse_response)
        if (!std::isfinite(tap)) throw ConfigError("impulse response taps must be finite");
}

double distance_gain(double reference_gain, double distance_m) {
    if (!(distance_m > 0.0)) throw ConfigError("distance must be positive");
    return reference_gain / (distance_m * distance_m);
}

bool ar_is_stable(const std::vector<double>& coefficients) {
    // Step-down (Schur-Cohn) on the prediction-error polynomial
    // A(z) = 1 - sum a_k z^-k: stable iff every reflection coefficient
    // stays inside the unit circle.
    std::vector<double> alpha(coefficients.size());
    for (std::size_t i = 0; i < coefficients.size(); ++i) alpha[i] = -coefficients[i];
    for (std::size_t m = alpha.size(); m >= 1; --m) {
        const double k = alpha[m - 1];
        if (!(std::fabs(k) < 1.0)) return false;
        const double denom = 1.0 - k * k;
        std::vector<double> next(m - 1);
        for (std::size_t j = 1; j < m; ++j)
            next[j - 1] = (alpha[j - 1] - k * alpha[m - 1 - j]) / denom;
        alpha = std::move(next);
    }
    return true;
}

std::vector<double> ar_theoretical_acf(const std::vector<double>& coefficients,
                                       double driving_std, int max_lag) {
    if (max_lag < 0) throw ConfigError("max_lag must be nonnegative");
    if (!ar_is_stable(coefficients))
        throw StabilityError("AR coefficients define an unstable process");
    const int p = static_cast<int>(coefficients.size());
    const double var_e = driving_std * driving_std;
    std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1, 0.0);
    if (p == 0) {
        acf[0] = var_e;
        return acf;
    }

    // Stationarity system for R[0..p]:
    //   R[m] - sum_k a_k R[|m-k|] = var_e * delta[m]
    const std::size_t n = static_cast<std::size_t>(p) + 1;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    std::vector<double> rhs(n, 0.0);
    rhs[0] = var_e;
    for (std::size_t row = 0; row < n; ++row) {
        m[row][row] += 1.0;
        for (int k = 1; k <= p; ++k) {
            const std::size_t idx = static_cast<std::size_t>(std::abs(static_cast<int>(row) - k));
            m[row][idx] -= coefficients[static_cast<std::size_t>(k - 1)];
        }
    }
    const std::vector<double> head = solve_dense(std::move(m), std::move(rhs));
    for (std::size_t i = 0; i < n && i < acf.size(); ++i) acf[i] = head[i];
    for (std::size_t lag = n; lag < acf.size(); ++lag) {
        double acc = 0.0;
        for (int k = 1; k <= p; ++k)
            acc += coefficients[static_cast<std::size_t>(k - 1)] * acf[lag - static_cast<std::size_t>(k)];
        acf[lag] = acc;
    }
    return acf;
}

double interference_power(const InterferenceSpec& spec) {
    return std::visit(PowerVisitor{}, spec);
}

InterferenceSpec scale_interference(const InterferenceSpec& spec, double factor) {
    if (!(factor >= 0.0)) throw ConfigError("interference scale must be nonnegative");
    return std::visit(ScaleVisitor{factor}, spec);
}

void validate_interference(const InterferenceSpec& spec, double sample_rate) {
    if (!(sample_rate > 0.0)) throw ConfigError("sample_rate must be positive");
    std::visit(Validator{sample_rate}, spec);
}

SampleBuffer generate_interference(const InterferenceSpec& spec, std::size_t length,
                                   double sample_rate, RngSeed seed) {
    if (length == 0) throw ConfigError("interference length must be >= 1");
    validate_interference(spec, sample_rate);
    SampleBuffer out;
    out.sample_rate = sample_rate;
    out.samples.assign(length, 0.0);
    std::visit(Generator{out.samples, sample_rate, seed}, spec);
    return out;
}

SampleBuffer acquire_noise_only(const InterferenceSpec& spec, const NoiseSpec& noise,
                                std::size_t n_samples, double sample_rate, RngSeed seed) {
    SampleBuffer out = generate_interference(spec, n_samples, sample_rate,
                                             derive_stream(seed, kInterferencePurpose));
    Rng rng(derive_stream(seed, kAwgnPurpose));
    for (double& v : out.samples) v += rng.gaussian(noise.awgn_std);
    return out;
}

SampleBuffer acquire_obstructed(const NoiseSpec& noise, std::size_t n_samples,
                                double sample_rate, RngSeed seed) {
    if (n_samples == 0) throw ConfigError("capture length must be >= 1");
    SampleBuffer out;
    out.sample_rate = sample_rate;
    out.samples.resize(n_samples);
    Rng rng(derive_stream(seed, kAwgnPurpose));
    for (double& v : out.samples) v = rng.gaussian(noise.awgn_std);
    return out;
}

SampleBuffer transmit_through(const SampleBuffer& x, const ChannelModel& ch,
                              const InterferenceSpec& spec, const NoiseSpec& noise,
                              RngSeed seed) {
    if (x.samples.empty()) throw ConfigError("cannot transmit an empty buffer");
    ch.validate();
    const std::size_t delay = static_cast<std::size_t>(ch.delay_samples);
    const std::size_t out_len = x.samples.size() + delay;

    SampleBuffer out = acquire_noise_only(spec, noise, out_len, x.sample_rate, seed);

    static const std::vector<double> unit_tap{1.0};
    const std::vector<double>& h = ch.impulse_response.empty() ? unit_tap : ch.impulse_response;
    for (std::size_t m = 0; m < x.samples.size(); ++m) {
        double conv = 0.0;
        const std::size_t t_max = std::min(m + 1, h.size());
        for (std::size_t t = 0; t < t_max; ++t) conv += h[t] * x.samples[m - t];
        out.samples[m + delay] += ch.gain * conv;
    }
    return out;
}

}  // namespace vlc
