#pragma once

// shared test utilities: random quaternions/matrices, a two-sample
// Kolmogorov-Smirnov p-value, and a small Poisson sampler.

#include <algorithm>
#include <cmath>
#include <vector>

#include "truncsp/quaternion.hpp"
#include "truncsp/rng.hpp"

namespace testutil {

inline truncsp::Quaternion random_quat(truncsp::CounterRng& rng) {
    return {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
}

inline truncsp::QuaternionMatrix random_qmat(int rows, int cols, truncsp::CounterRng& rng) {
    truncsp::QuaternionMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_quat(rng);
    return m;
}

// asymptotic two-sample KS p-value
inline double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        p += sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
        sign = -sign;
    }
    return std::clamp(p, 0.0, 1.0);
}

// Knuth for small means, normal approximation above
inline long poisson_draw(double mean, truncsp::CounterRng& rng) {
    if (mean <= 0.0) return 0;
    if (mean > 50.0) {
        const double v = mean + std::sqrt(mean) * rng.normal();
        return v < 0.0 ? 0 : static_cast<long>(std::lround(v));
    }
    const double limit = std::exp(-mean);
    long k = 0;
    double prod = rng.uniform();
    while (prod > limit) {
        ++k;
        prod *= rng.uniform();
    }
    return k;
}

}  // namespace testutil
