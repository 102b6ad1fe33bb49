#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vlc/ppm.hpp"

namespace vlc {

// Metrics c_l = dot(frame, m_l) and the ML decision l̂ = argmax c_l,
// ties broken toward the smallest slot index.
struct DecisionRecord {
    std::vector<double> metrics;
    int decided_symbol = 0;
    std::optional<int> true_symbol;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

struct SerReport {
    long n_symbols = 0;
    long n_errors = 0;
    double ser = 0.0;
    WilsonInterval wilson_95;
};

DecisionRecord detect_frame(std::span<const double> frame,
                            const std::vector<SampleBuffer>& masks);
DecisionRecord detect_frame(const SampleBuffer& frame,
                            const std::vector<SampleBuffer>& masks);

// Frame-synchronous segmentation + per-frame detection. z length must be a
// multiple of frame_samples (frame synchronization is assumed exact).
SymbolSequence detect_stream(const SampleBuffer& z, const PpmConfig& cfg);

// Exact error count with a 95% Wilson score interval.
SerReport compute_ser(const SymbolSequence& decided, const SymbolSequence& truth);

WilsonInterval wilson_interval_95(long errors, long n);

}  // namespace vlc
