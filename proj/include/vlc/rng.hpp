#pragma once

#include <cstdint>
#include <random>

namespace vlc {

// Base seed plus stream id. Distinct stream ids give independent sequences
// for the same base seed; every random quantity in a run is drawn from a
// stream derived from the scenario seed, so runs are fully reproducible.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// splitmix64 finalizer, used for seeding and stream derivation.
std::uint64_t mix64(std::uint64_t x);

// Single engine seed for a (seed, stream) pair.
std::uint64_t effective_seed(RngSeed s);

// Derive child streams for different purposes / sweep indices.
RngSeed derive_stream(RngSeed base, std::uint64_t purpose);
RngSeed derive_stream(RngSeed base, std::uint64_t a, std::uint64_t b);

// Deterministic generator. Gaussian variates use the polar Box-Muller
// transform so the byte stream does not depend on the standard library's
// normal_distribution implementation.
class Rng {
public:
    explicit Rng(RngSeed s) : engine_(effective_seed(s)) {}

    double uniform01();                 // [0, 1)
    double gaussian(double stddev);     // N(0, stddev^2)
    int uniform_int(int lo, int hi);    // inclusive, unbiased

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace vlc
