#include "vlc/estimation.hpp"

#include <cmath>
#include <string>

#include "vlc/errors.hpp"

namespace vlc {

namespace {

AcfEstimate biased_acf(const std::vector<double>& x, int max_lag, double removed_mean) {
    const std::size_t n = x.size();
    AcfEstimate out;
    out.n_source_samples = static_cast<long>(n);
    out.mean = removed_mean;
    out.values.assign(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int m = 0; m <= max_lag; ++m) {
        double acc = 0.0;
        for (std::size_t i = static_cast<std::size_t>(m); i < n; ++i)
            acc += x[i] * x[i - static_cast<std::size_t>(m)];
        out.values[static_cast<std::size_t>(m)] = acc / static_cast<double>(n);
    }
    return out;
}

void check_acf_args(const SampleBuffer& x, int max_lag) {
    if (x.samples.empty()) throw ConfigError("cannot estimate the ACF of an empty buffer");
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= x.samples.size())
        throw ConfigError("max_lag " + std::to_string(max_lag) +
                          " must be smaller than the sample count " +
                          std::to_string(x.samples.size()));
}

// Levinson-Durbin on the symmetric Toeplitz system. Returns false when a
// reflection coefficient reaches magnitude 1.
bool levinson(const std::vector<double>& r, double r0, int p, std::vector<double>& a,
              double& err) {
    a.assign(static_cast<std::size_t>(p), 0.0);
    err = r0;
    for (int m = 1; m <= p; ++m) {
        double acc = r[static_cast<std::size_t>(m)];
        for (int j = 1; j < m; ++j)
            acc -= a[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(m - j)];
        const double k = acc / err;
        if (!(std::fabs(k) < 1.0)) return false;
        for (int j = 1; j <= m / 2; ++j) {
            const double lo = a[static_cast<std::size_t>(j - 1)];
            const double hi = (j == m - j) ? lo : a[static_cast<std::size_t>(m - j - 1)];
            a[static_cast<std::size_t>(j - 1)] = lo - k * hi;
            if (j != m - j) a[static_cast<std::size_t>(m - j - 1)] = hi - k * lo;
        }
        a[static_cast<std::size_t>(m - 1)] = k;
        err *= 1.0 - k * k;
    }
    return std::isfinite(err);
}

}  // namespace

AcfEstimate estimate_acf(const SampleBuffer& x, int max_lag) {
    check_acf_args(x, max_lag);
    return biased_acf(x.samples, max_lag, 0.0);
}

AcfEstimate estimate_acf_centered(const SampleBuffer& x, int max_lag) {
    check_acf_args(x, max_lag);
    const double mu = mean(x);
    std::vector<double> centered(x.samples.size());
    for (std::size_t i = 0; i < x.samples.size(); ++i) centered[i] = x.samples[i] - mu;
    return biased_acf(centered, max_lag, mu);
}

double estimate_noise_power(const SampleBuffer& obstructed) {
    if (obstructed.samples.empty())
        throw ConfigError("cannot estimate noise power from an empty capture");
    return power(obstructed);
}

AcfEstimate interference_acf(const AcfEstimate& acquired, double noise_power) {
    AcfEstimate out = acquired;
    const double lag0 = acquired.values.at(0) - noise_power;
    if (lag0 < 0.0) {
        out.values[0] = 0.0;
        out.lag0_clamped = true;
    } else {
        out.values[0] = lag0;
    }
    return out;
}

PredictorModel solve_yule_walker(const AcfEstimate& acf, int order) {
    if (order < 1) throw ConfigError("predictor order must be >= 1");
    if (order > acf.max_lag())
        throw ConfigError("predictor order " + std::to_string(order) +
                          " exceeds max_lag " + std::to_string(acf.max_lag()));
    const double r0 = acf.values[0];
    if (!(r0 > 0.0)) throw DegenerateAcfError("interference ACF has no power at lag 0");

    PredictorModel model;
    model.order = order;
    if (levinson(acf.values, r0, order, model.coefficients, model.residual_variance))
        return model;

    // One bounded retry with a slightly lifted diagonal.
    const double bumped = r0 * (1.0 + 1e-8);
    if (levinson(acf.values, bumped, order, model.coefficients, model.residual_variance))
        return model;
    throw IllConditionedError(
        "Yule-Walker system is ill-conditioned: reflection coefficient reached "
        "magnitude 1 even after diagonal regularization");
}

}  // namespace vlc
