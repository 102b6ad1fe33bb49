#pragma once

#include <vector>

#include "vlc/sample_buffer.hpp"

namespace vlc {

enum class AcfEstimator { biased };

// Autocorrelation values indexed by lag 0..max_lag. The biased
// (divide-by-N) estimator keeps the lag Toeplitz matrix positive
// semidefinite, which keeps Levinson-Durbin well-posed.
struct AcfEstimate {
    std::vector<double> values;
    long n_source_samples = 0;
    AcfEstimator estimator = AcfEstimator::biased;
    double mean = 0.0;          // sample mean removed before estimation (0 if none)
    bool lag0_clamped = false;  // noise-floor subtraction hit the zero clamp

    int max_lag() const { return static_cast<int>(values.size()) - 1; }
};

// One-step linear predictor  x̂[n] = Σ_{k=1..p} a_k x[n-k].
struct PredictorModel {
    int order = 0;
    std::vector<double> coefficients;  // a_1..a_p
    double residual_variance = 0.0;    // final prediction-error power
};

// Biased estimator R[m] = (1/N) Σ_{n=m}^{N-1} x[n] x[n-m].
AcfEstimate estimate_acf(const SampleBuffer& x, int max_lag);

// Same estimator applied to the mean-removed capture; the removed mean is
// stored so the canceller can subtract the DC level separately.
AcfEstimate estimate_acf_centered(const SampleBuffer& x, int max_lag);

// Lag-0 biased ACF (mean square) of an obstructed capture: white noise has
// a delta ACF, so this single value is the noise power.
double estimate_noise_power(const SampleBuffer& obstructed);

// R_i[0] = R_y[0] - noise_power (clamped at 0, flagged), R_i[m] = R_y[m]
// for m >= 1: white noise contributes only at lag 0. Note the subtraction
// can leave |R_i[m]| > R_i[0]; solve_yule_walker guards against the
// resulting indefinite systems.
AcfEstimate interference_acf(const AcfEstimate& acquired, double noise_power);

// Solve the p x p symmetric Toeplitz Yule-Walker system
//   Σ_k a_k R[|j-k|] = R[j],  j = 1..p
// by Levinson-Durbin. On a reflection coefficient reaching magnitude 1 the
// lag-0 value is bumped by 1e-8 * R[0] and the recursion retried once;
// a second failure throws IllConditionedError. R[0] <= 0 throws
// DegenerateAcfError.
PredictorModel solve_yule_walker(const AcfEstimate& acf, int order);

}  // namespace vlc
