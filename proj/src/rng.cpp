#include "vlc/rng.hpp"

#include <cmath>

namespace vlc {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t effective_seed(RngSeed s) {
    return mix64(mix64(s.seed) ^ mix64(s.stream_id + 0x632be59bd9b4e019ull));
}

RngSeed derive_stream(RngSeed base, std::uint64_t purpose) {
    return RngSeed{base.seed, mix64(base.stream_id ^ mix64(purpose + 1))};
}

RngSeed derive_stream(RngSeed base, std::uint64_t a, std::uint64_t b) {
    return derive_stream(derive_stream(base, a), b ^ 0x5851f42d4c957f2dull);
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian(double stddev) {
    if (has_cached_) {
        has_cached_ = false;
        return cached_ * stddev;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f * stddev;
}

int Rng::uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    std::uint64_t x, r;
    do {
        x = engine_();
        r = x % span;
    } while (x - r > std::uint64_t(-1) - span + 1);
    return lo + static_cast<int>(r);
}

}  // namespace vlc
