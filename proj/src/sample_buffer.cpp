#include "vlc/sample_buffer.hpp"

namespace vlc {

double mean(const SampleBuffer& x) {
    if (x.samples.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x.samples) acc += v;
    return acc / static_cast<double>(x.samples.size());
}

double power(const SampleBuffer& x) {
    if (x.samples.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x.samples) acc += v * v;
    return acc / static_cast<double>(x.samples.size());
}

}  // namespace vlc
