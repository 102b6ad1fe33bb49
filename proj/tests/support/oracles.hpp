// Test-side oracles, independent of the library implementations they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracles {

// Direct dense solve of the Yule-Walker system: p x p Toeplitz matrix with
// entries r[|j-k|], right-hand side r[1..p]. Partial-pivot Gaussian
// elimination; deliberately shares nothing with the library's
// Levinson-Durbin path.
inline std::vector<double> dense_yule_walker(const std::vector<double>& r, int p) {
    const std::size_t n = static_cast<std::size_t>(p);
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    std::vector<double> b(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k)
            m[j][k] = r[static_cast<std::size_t>(std::abs(static_cast<int>(j) - static_cast<int>(k)))];
        b[j] = r[j + 1];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
        if (m[pivot][col] == 0.0) throw std::runtime_error("oracle: singular system");
        std::swap(m[pivot], m[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (std::size_t k = row + 1; k < n; ++k) acc -= m[row][k] * x[k];
        x[row] = acc / m[row][row];
    }
    return x;
}

// Stable AR coefficients from reflection coefficients via the step-up
// recursion; every |k| < 1 guarantees stability.
inline std::vector<double> ar_from_reflections(const std::vector<double>& k) {
    std::vector<double> a;
    for (std::size_t m = 1; m <= k.size(); ++m) {
        std::vector<double> next(m);
        for (std::size_t j = 1; j < m; ++j)
            next[j - 1] = a[j - 1] - k[m - 1] * a[m - 1 - j];
        next[m - 1] = k[m - 1];
        a = std::move(next);
    }
    return a;
}

// Shrink reflection coefficients until the prediction-error product
// Pi(1 - k^2) stays above `floor`. The product bounds the Toeplitz
// condition number, and the solver contract promises 1e-9 agreement only
// on well-conditioned systems.
inline void bound_conditioning(std::vector<double>& k, double floor = 1e-4) {
    const auto product = [&k] {
        double p = 1.0;
        for (double v : k) p *= 1.0 - v * v;
        return p;
    };
    while (product() < floor)
        for (double& v : k) v *= 0.85;
}

// True iff matrix + shift*I admits a Cholesky factorization, i.e. all
// eigenvalues of `matrix` are >= -shift.
inline bool cholesky_with_shift(std::vector<std::vector<double>> m, double shift) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) m[i][i] += shift;
    for (std::size_t j = 0; j < n; ++j) {
        double d = m[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= m[j][k] * m[j][k];
        if (d <= 0.0) return false;
        const double root = std::sqrt(d);
        m[j][j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double acc = m[i][j];
            for (std::size_t k = 0; k < j; ++k) acc -= m[i][k] * m[j][k];
            m[i][j] = acc / root;
        }
    }
    return true;
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::runtime_error("oracle: median of empty set");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Biased sample ACF, test-local copy for whiteness checks.
inline std::vector<double> sample_acf(const std::vector<double>& x, int max_lag) {
    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int m = 0; m <= max_lag; ++m) {
        double acc = 0.0;
        for (std::size_t i = static_cast<std::size_t>(m); i < x.size(); ++i)
            acc += x[i] * x[i - static_cast<std::size_t>(m)];
        r[static_cast<std::size_t>(m)] = acc / static_cast<double>(x.size());
    }
    return r;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

inline double max_abs(const std::vector<double>& a) {
    double d = 0.0;
    for (double v : a) d = std::max(d, std::fabs(v));
    return d;
}

}  // namespace oracles
