#include "vlc/detection.hpp"

#include <cmath>
#include <string>

#include "vlc/errors.hpp"

namespace vlc {

DecisionRecord detect_frame(std::span<const double> frame,
                            const std::vector<SampleBuffer>& masks) {
    if (masks.empty()) throw ConfigError("detection needs at least one mask");
    DecisionRecord rec;
    rec.metrics.resize(masks.size());
    for (std::size_t l = 0; l < masks.size(); ++l) {
        const auto& m = masks[l].samples;
        if (m.size() != frame.size())
            throw ConfigError("frame length " + std::to_string(frame.size()) +
                              " does not match mask length " + std::to_string(m.size()));
        double acc = 0.0;
        for (std::size_t n = 0; n < m.size(); ++n) acc += frame[n] * m[n];
        rec.metrics[l] = acc;
    }
    rec.decided_symbol = 0;
    for (std::size_t l = 1; l < rec.metrics.size(); ++l)
        if (rec.metrics[l] > rec.metrics[static_cast<std::size_t>(rec.decided_symbol)])
            rec.decided_symbol = static_cast<int>(l);
    return rec;
}

DecisionRecord detect_frame(const SampleBuffer& frame,
                            const std::vector<SampleBuffer>& masks) {
    return detect_frame(std::span<const double>(frame.samples), masks);
}

SymbolSequence detect_stream(const SampleBuffer& z, const PpmConfig& cfg) {
    cfg.validate();
    const std::size_t frame = static_cast<std::size_t>(cfg.frame_samples());
    if (z.samples.size() % frame != 0)
        throw ConfigError("stream length " + std::to_string(z.samples.size()) +
                          " is not a multiple of frame_samples " + std::to_string(frame));
    const std::vector<SampleBuffer> masks = build_masks(cfg);
    SymbolSequence out;
    out.order_M = cfg.order_M;
    out.symbols.reserve(z.samples.size() / frame);
    for (std::size_t k = 0; k * frame < z.samples.size(); ++k) {
        std::span<const double> view(z.samples.data() + k * frame, frame);
        out.symbols.push_back(detect_frame(view, masks).decided_symbol);
    }
    return out;
}

WilsonInterval wilson_interval_95(long errors, long n) {
    if (n <= 0) throw ConfigError("Wilson interval needs n >= 1");
    if (errors < 0 || errors > n) throw ConfigError("error count out of range");
    constexpr double z = 1.959963984540054;  // 97.5th percentile of N(0,1)
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(errors) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = p + z2 / (2.0 * nn);
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    WilsonInterval w;
    // clamp so 0 <= low <= p <= high <= 1 survives rounding at the edges
    w.low = std::min(std::max(0.0, (center - half) / denom), p);
    w.high = std::max(std::min(1.0, (center + half) / denom), p);
    return w;
}

SerReport compute_ser(const SymbolSequence& decided, const SymbolSequence& truth) {
    if (decided.symbols.size() != truth.symbols.size() || decided.symbols.empty())
        throw ConfigError("SER needs equal nonempty symbol sequences");
    if (decided.order_M != truth.order_M)
        throw ConfigError("SER comparison across different modulation orders");
    SerReport rep;
    rep.n_symbols = static_cast<long>(decided.symbols.size());
    for (std::size_t i = 0; i < decided.symbols.size(); ++i)
        if (decided.symbols[i] != truth.symbols[i]) ++rep.n_errors;
    rep.ser = static_cast<double>(rep.n_errors) / static_cast<double>(rep.n_symbols);
    rep.wilson_95 = wilson_interval_95(rep.n_errors, rep.n_symbols);
    return rep;
}

}  // namespace vlc
