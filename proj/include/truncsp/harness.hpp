#pragma once

// Monte Carlo experiments: draw spectra in parallel (one RNG stream per
// sample index, so results are independent of the worker count), bin, and
// compare against the exact or asymptotic oracles.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "truncsp/histogram.hpp"
#include "truncsp/kernel.hpp"
#include "truncsp/params.hpp"
#include "truncsp/sampler.hpp"

namespace truncsp {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct StatisticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleSpec {
    enum class Kind { ExactFiniteN, StrongLimit, WeakLimit, SpEigenangle, EdgeDensity };
    Kind kind{Kind::ExactFiniteN};
    double a{1.0};  // StrongLimit only
};

struct ExperimentConfig {
    TruncationParams params;
    std::int64_t samples{1};
    std::uint64_t seed{0};
    BinningSpec binning;
    OracleSpec oracle;
    int threads{0};  // 0 = hardware concurrency
};

// Bins the 2N-point picture (each representative and its conjugate) and
// compares per-bin counts against the bin-integrated oracle intensity.
// Radial bins see each conjugate pair twice, so their variance is 2x Poisson;
// the report's z-scores account for that.
//
// With oracle kind SpEigenangle the draw is the untruncated Haar matrix at
// dimension N and the binning must be Angular: the 2N eigenangles are
// compared against the Sp(2N) eigenangle density.
ComparisonReport run_density_experiment(const ExperimentConfig& cfg);

// Pair-correlation estimator: ordered pairs of upper-half representatives
// with one leg in the reference disk |z - z0| < ref_radius and the partner
// binned into annuli around z0 with the given outer radii. z0 is
// canonicalised to the upper half-plane (the ensemble is conjugation
// symmetric). Compares against R2_exact in the representative (R^+) picture.
ComparisonReport run_pair_correlation_experiment(const ExperimentConfig& cfg, Complex z0,
                                                 std::span<const double> radii,
                                                 double ref_radius = 0.03);

// Edge experiment: bins the microscopic coordinates x + iy = N (1 - z) of
// the 2N-point picture (cartesian binning in (x, y)) against edge_density.
ComparisonReport run_edge_experiment(const ExperimentConfig& cfg);

}  // namespace truncsp
