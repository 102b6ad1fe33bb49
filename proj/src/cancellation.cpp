#include "vlc/cancellation.hpp"

#include <cmath>
#include <string>

#include "vlc/errors.hpp"

namespace vlc {

CancellerState prime(const PredictorModel& model, double dc_level,
                     const SampleBuffer& warmup) {
    const std::size_t p = model.coefficients.size();
    if (static_cast<std::size_t>(model.order) != p)
        throw ConfigError("predictor order does not match its coefficient count");
    if (warmup.samples.size() < p)
        throw ConfigError("warm-up buffer shorter than predictor order " + std::to_string(p));
    CancellerState state;
    state.model = model;
    state.dc_level = dc_level;
    state.history.resize(p);
    const std::size_t n = warmup.samples.size();
    for (std::size_t k = 0; k < p; ++k) state.history[k] = warmup.samples[n - 1 - k] - dc_level;
    return state;
}

SampleBuffer cancel(CancellerState& state, const SampleBuffer& r) {
    const std::size_t p = state.history.size();
    const std::vector<double>& a = state.model.coefficients;
    SampleBuffer out;
    out.sample_rate = r.sample_rate;
    out.samples.resize(r.samples.size());
    std::vector<double>& hist = state.history;
    for (std::size_t n = 0; n < r.samples.size(); ++n) {
        const double u = r.samples[n] - state.dc_level;
        double predicted = 0.0;
        for (std::size_t k = 0; k < p; ++k) predicted += a[k] * hist[k];
        out.samples[n] = u - predicted;
        // advance with the observed input, not the prediction
        for (std::size_t k = p; k-- > 1;) hist[k] = hist[k - 1];
        if (p > 0) hist[0] = u;
    }
    return out;
}

double prediction_gain_db(const SampleBuffer& before, const SampleBuffer& after) {
    if (before.samples.size() != after.samples.size())
        throw ConfigError("prediction gain needs equal-length buffers");
    const double pb = power(before);
    if (!(pb > 0.0)) throw ConfigError("prediction gain undefined for zero input power");
    return 10.0 * std::log10(pb / power(after));
}

}  // namespace vlc
