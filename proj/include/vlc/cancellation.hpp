#pragma once

#include "vlc/estimation.hpp"
#include "vlc/sample_buffer.hpp"

namespace vlc {

// Running predictor context. history holds the last p centered inputs,
// most recent first; it advances with the observed input, not the filter
// output, matching the one-step linear predictor form.
struct CancellerState {
    PredictorModel model;
    std::vector<double> history;
    double dc_level = 0.0;
};

// Initialize history from the tail of a warm-up buffer (typically the end
// of the acquisition capture), removing dc_level from each sample.
CancellerState prime(const PredictorModel& model, double dc_level,
                     const SampleBuffer& warmup);

// For each sample: u[n] = r[n] - dc, î[n] = Σ a_k history[k], output
// z[n] = u[n] - î[n], then push u[n]. Output length equals input length.
SampleBuffer cancel(CancellerState& state, const SampleBuffer& r);

// 10 log10(power(before) / power(after)).
double prediction_gain_db(const SampleBuffer& before, const SampleBuffer& after);

}  // namespace vlc
