#pragma once

#include <cstdint>
#include <vector>

#include "vlc/sample_buffer.hpp"

namespace vlc {

// M-ary PPM frame geometry: one rectangular pulse of amplitude A occupying
// one of the M slots of a frame of duration T. The pulse fills its slot
// (q = T/M), so slot-aligned placement in discrete time is exact.
struct PpmConfig {
    int order_M = 4;              // symbol alphabet size, power of two >= 2
    double frame_duration = 1e-3; // seconds
    double sample_rate = 1e6;     // samples/second
    double amplitude = 1.0;       // pulse amplitude A

    int frame_samples() const;    // round(T * fs), divisible by M
    int slot_samples() const;     // frame_samples / M
    int bits_per_symbol() const;  // log2(M)
    double bit_rate() const;      // log2(M) / T: one frame carries log2(M) bits
    void validate() const;        // throws ConfigError on invariant violation
};

// Slot indices l in [0, M-1].
struct SymbolSequence {
    std::vector<int> symbols;
    int order_M = 2;
};

using BitSequence = std::vector<std::uint8_t>;  // values 0/1

// Groups of log2(M) bits map to one symbol, natural binary order, MSB first.
SymbolSequence bits_to_symbols(const BitSequence& bits, const PpmConfig& cfg);

// Exact inverse of bits_to_symbols.
BitSequence symbols_to_bits(const SymbolSequence& symbols);

// Sampled waveform: within frame k carrying symbol l, samples in the
// half-open slot [l*slot, (l+1)*slot) equal A, all others 0.
SampleBuffer modulate(const SymbolSequence& symbols, const PpmConfig& cfg);

// Per-symbol detection masks: mask l is 1 on slot l and 0 elsewhere. The M
// masks are mutually orthogonal and partition the frame.
std::vector<SampleBuffer> build_masks(const PpmConfig& cfg);

}  // namespace vlc
