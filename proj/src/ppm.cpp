#include "vlc/ppm.hpp"

#include <cmath>
#include <string>

#include "vlc/errors.hpp"

namespace vlc {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_int(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

}  // namespace

int PpmConfig::frame_samples() const {
    return static_cast<int>(std::lround(frame_duration * sample_rate));
}

int PpmConfig::slot_samples() const { return frame_samples() / order_M; }

int PpmConfig::bits_per_symbol() const { return log2_int(order_M); }

double PpmConfig::bit_rate() const { return bits_per_symbol() / frame_duration; }

void PpmConfig::validate() const {
    if (!is_power_of_two(order_M) || order_M < 2)
        throw ConfigError("order_M must be a power of two >= 2, got " + std::to_string(order_M));
    if (!(frame_duration > 0.0) || !(sample_rate > 0.0))
        throw ConfigError("frame_duration and sample_rate must be positive");
    const int frame = frame_samples();
    if (frame < order_M || frame % order_M != 0)
        throw ConfigError("frame_samples (" + std::to_string(frame) +
                          ") must be a positive multiple of order_M (" +
                          std::to_string(order_M) + ")");
    if (!(amplitude > 0.0)) throw ConfigError("amplitude must be positive");
}

SymbolSequence bits_to_symbols(const BitSequence& bits, const PpmConfig& cfg) {
    cfg.validate();
    const int b = cfg.bits_per_symbol();
    if (bits.size() % static_cast<std::size_t>(b) != 0)
        throw ConfigError("bit count " + std::to_string(bits.size()) +
                          " is not a multiple of log2(M) = " + std::to_string(b));
    SymbolSequence out;
    out.order_M = cfg.order_M;
    out.symbols.reserve(bits.size() / b);
    for (std::size_t i = 0; i < bits.size(); i += b) {
        int sym = 0;
        for (int j = 0; j < b; ++j) sym = (sym << 1) | (bits[i + j] ? 1 : 0);
        out.symbols.push_back(sym);
    }
    return out;
}

BitSequence symbols_to_bits(const SymbolSequence& symbols) {
    const int M = symbols.order_M;
    int b = 0;
    while ((1 << b) < M) ++b;
    BitSequence bits;
    bits.reserve(symbols.symbols.size() * b);
    for (int sym : symbols.symbols) {
        if (sym < 0 || sym >= M)
            throw ConfigError("symbol " + std::to_string(sym) + " out of range for M = " +
                              std::to_string(M));
        for (int j = b - 1; j >= 0; --j) bits.push_back(static_cast<std::uint8_t>((sym >> j) & 1));
    }
    return bits;
}

SampleBuffer modulate(const SymbolSequence& symbols, const PpmConfig& cfg) {
    cfg.validate();
    const int frame = cfg.frame_samples();
    const int slot = cfg.slot_samples();
    SampleBuffer out;
    out.sample_rate = cfg.sample_rate;
    out.samples.assign(symbols.symbols.size() * static_cast<std::size_t>(frame), 0.0);
    for (std::size_t k = 0; k < symbols.symbols.size(); ++k) {
        const int l = symbols.symbols[k];
        if (l < 0 || l >= cfg.order_M)
            throw ConfigError("symbol " + std::to_string(l) + " out of range for M = " +
                              std::to_string(cfg.order_M));
        const std::size_t start = k * frame + static_cast<std::size_t>(l) * slot;
        for (int n = 0; n < slot; ++n) out.samples[start + n] = cfg.amplitude;
    }
    return out;
}

std::vector<SampleBuffer> build_masks(const PpmConfig& cfg) {
    cfg.validate();
    const int frame = cfg.frame_samples();
    const int slot = cfg.slot_samples();
    std::vector<SampleBuffer> masks(cfg.order_M);
    for (int l = 0; l < cfg.order_M; ++l) {
        masks[l].sample_rate = cfg.sample_rate;
        masks[l].samples.assign(frame, 0.0);
        for (int n = 0; n < slot; ++n) masks[l].samples[l * slot + n] = 1.0;
    }
    return masks;
}

}  // namespace vlc
