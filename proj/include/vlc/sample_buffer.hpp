#pragma once

#include <cstddef>
#include <vector>

namespace vlc {

// Finite sequence of real amplitude samples at a fixed sample rate.
// The universal signal carrier: x[n], y[n], r[n], i[n], w[n] all live here.
struct SampleBuffer {
    std::vector<double> samples;
    double sample_rate = 0.0;

    std::size_t size() const { return samples.size(); }
    double operator[](std::size_t i) const { return samples[i]; }
    double& operator[](std::size_t i) { return samples[i]; }
};

double mean(const SampleBuffer& x);
double power(const SampleBuffer& x);  // mean square

}  // namespace vlc
