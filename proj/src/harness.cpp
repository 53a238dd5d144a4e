#include "truncsp/harness.hpp"

#include "truncsp/eig.hpp"
#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "truncsp/asymptotics.hpp"
#include "truncsp/quadrature.hpp"
#include "truncsp/special.hpp"

namespace truncsp {

namespace {

constexpr double kPi = std::numbers::pi;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs per_sample(sample_index, worker_index) over 0..samples-1, samples
// strided across workers. Binning is associative, so results are identical
// for any worker count.
void fan_out(std::int64_t samples, int threads, const std::function<void(std::int64_t, int)>& per_sample) {
    const int t = std::min<std::int64_t>(resolve_threads(threads), samples);
    if (t <= 1) {
        for (std::int64_t s = 0; s < samples; ++s) per_sample(s, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mtx;
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::int64_t s = w; s < samples; s += t) per_sample(s, w);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

std::string describe(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "N=" << cfg.params.n_keep << " M=" << cfg.params.m_removed << " samples=" << cfg.samples
       << " seed=" << cfg.seed;
    return os.str();
}

void check_disk_domain(const BinningSpec& b) {
    double worst = 0.0;
    if (b.kind == BinKind::Radial || b.kind == BinKind::Polar) {
        worst = b.hi1;
    } else if (b.kind == BinKind::Cartesian) {
        const double x = std::max(std::abs(b.lo1), std::abs(b.hi1));
        const double y = std::max(std::abs(b.lo2), std::abs(b.hi2));
        worst = std::hypot(x, y);
    }
    if (worst > 1.0 + 1e-12) throw ConfigError("binning extends outside the unit disk");
}

std::vector<Complex> haar_eigenvalues(int dim, RngStream stream) {
    CounterRng rng(stream);
    const QuaternionMatrix u = haar_unitary_quaternion(dim, rng);
    return complex_eigenvalues(to_complex_rep(u));
}

}  // namespace

ComparisonReport run_density_experiment(const ExperimentConfig& cfg) {
    if (cfg.samples < 1) throw ConfigError("run_density_experiment: samples must be >= 1");
    cfg.binning.validate();

    const int n = cfg.params.n_keep;
    const int m = cfg.params.m_removed;
    const std::int64_t samples = cfg.samples;
    const int nb = cfg.binning.total_bins();

    using Kind = OracleSpec::Kind;
    if (cfg.oracle.kind == Kind::EdgeDensity)
        throw ConfigError("run_density_experiment: use run_edge_experiment for the edge oracle");
    if (cfg.oracle.kind == Kind::SpEigenangle) {
        if (cfg.binning.kind != BinKind::Angular)
            throw ConfigError("sp_eigenangle oracle requires angular binning");
        if (cfg.binning.lo1 < 0.0 || cfg.binning.hi1 > 2.0 * kPi + 1e-12)
            throw ConfigError("angular binning must lie within [0, 2 pi]");
    } else if (cfg.oracle.kind == Kind::ExactFiniteN || cfg.oracle.kind == Kind::StrongLimit) {
        check_disk_domain(cfg.binning);
    }

    // accumulate counts
    std::vector<Histogram> partial(static_cast<std::size_t>(resolve_threads(cfg.threads)),
                                   Histogram(cfg.binning));
    if (cfg.oracle.kind == Kind::SpEigenangle) {
        fan_out(samples, cfg.threads, [&](std::int64_t s, int w) {
            const auto evs = haar_eigenvalues(n, {cfg.seed, static_cast<std::uint64_t>(s)});
            for (const Complex& ev : evs) partial[static_cast<std::size_t>(w)].add(ev);
        });
    } else if (cfg.oracle.kind == Kind::WeakLimit) {
        fan_out(samples, cfg.threads, [&](std::int64_t s, int w) {
            const SpectrumSample sample =
                draw_spectrum(cfg.params, {cfg.seed, static_cast<std::uint64_t>(s)});
            for (const Complex& ev : sample.eigenvalues) {
                // microscopic radial variable q = N (1 - |z|), duplicated for the pair
                const double q = n * (1.0 - std::abs(ev));
                partial[static_cast<std::size_t>(w)].add(Complex(q, 0.0));
                partial[static_cast<std::size_t>(w)].add(Complex(q, 0.0));
            }
        });
    } else {
        fan_out(samples, cfg.threads, [&](std::int64_t s, int w) {
            const SpectrumSample sample =
                draw_spectrum(cfg.params, {cfg.seed, static_cast<std::uint64_t>(s)});
            for (const Complex& ev : sample.eigenvalues) {
                partial[static_cast<std::size_t>(w)].add(ev);
                partial[static_cast<std::size_t>(w)].add(std::conj(ev));
            }
        });
    }
    Histogram hist(cfg.binning);
    for (const Histogram& p : partial) hist.merge(p);

    // oracle expectations per bin
    std::vector<double> expected(static_cast<std::size_t>(nb), 0.0);
    std::vector<double> scale(static_cast<std::size_t>(nb), 0.0);
    double var_factor = 1.0;

    // layered validation: before an asymptotic oracle is consulted, the counts
    // must agree with the exact finite-N intensity on the same binning
    const auto enforce_exact_layer = [&](const std::vector<double>& exact_expected,
                                         double vf) {
        Histogram tmp(cfg.binning);
        tmp.counts = hist.counts;
        std::vector<double> unit(static_cast<std::size_t>(nb), 1.0);
        const ComparisonReport gate = compare(tmp, exact_expected, unit, vf);
        if (gate.summary.frac_within_3sigma < 0.95)
            throw StatisticsError(
                "layered validation: Monte Carlo disagrees with the exact finite-N oracle");
    };

    if (cfg.oracle.kind == Kind::SpEigenangle) {
        for (int b = 0; b < nb; ++b) {
            double a1, b1, a2, b2;
            cfg.binning.bin_bounds(b, a1, b1, a2, b2);
            expected[b] = samples * 2.0 * n * sp_eigenangle_bin_mass(n, a1, b1);
            scale[b] = static_cast<double>(samples) * 2.0 * n * cfg.binning.bin_area(b);
        }
    } else if (cfg.oracle.kind == Kind::WeakLimit) {
        if (cfg.binning.kind != BinKind::Radial)
            throw ConfigError("weak-limit oracle requires radial binning in q = N (1 - |z|)");
        KernelContext ctx(n, m);
        std::vector<double> exact_expected(static_cast<std::size_t>(nb), 0.0);
        for (int b = 0; b < nb; ++b) {
            double a1, b1, a2, b2;
            cfg.binning.bin_bounds(b, a1, b1, a2, b2);
            const QuadRule& rule = gauss_legendre_01(16);
            double mass = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double q = a1 + (b1 - a1) * rule.nodes[i];
                if (q > 0.0) mass += rule.weights[i] * weak_density_scaled(m, q);
            }
            mass *= (b1 - a1);
            // 2 R_1 ~ N^2 wds(q) and d^2 z ~ dq dphi / N over the thin annulus,
            // so the 2N-point count in a q-bin is 2 pi N int wds dq
            expected[b] = samples * 2.0 * kPi * n * mass;
            scale[b] = static_cast<double>(samples) * 2.0 * kPi * n * (b1 - a1);
            // exact finite-N mass of the matching annulus
            const double r_in = std::max(0.0, 1.0 - b1 / n);
            const double r_out = std::max(0.0, 1.0 - a1 / n);
            exact_expected[b] =
                r_out <= r_in
                    ? 0.0
                    : samples * polar_box_integral(
                                    [&](Complex z) { return 2.0 * R1_exact(ctx, z); }, r_in,
                                    r_out, 0.0, 2.0 * kPi, 8, 32);
        }
        var_factor = 2.0;  // conjugate pairs share the modulus bin
        enforce_exact_layer(exact_expected, var_factor);
    } else {
        const bool strong = cfg.oracle.kind == Kind::StrongLimit;
        KernelContext ctx(n, m);
        const RealFieldFn intensity = [&](Complex z) -> double {
            if (std::abs(z) > 1.0) return 0.0;
            return strong ? 2.0 * n * density_strong(cfg.oracle.a, z) : 2.0 * R1_exact(ctx, z);
        };
        for (int b = 0; b < nb; ++b) {
            double a1, b1, a2, b2;
            cfg.binning.bin_bounds(b, a1, b1, a2, b2);
            double mass = 0.0;
            switch (cfg.binning.kind) {
                case BinKind::Radial:
                    mass = polar_box_integral(intensity, a1, b1, 0.0, 2.0 * kPi, 8, 32);
                    break;
                case BinKind::Angular:
                    mass = polar_box_integral(intensity, 0.0, 1.0, a1, b1, 32, 8);
                    break;
                case BinKind::Polar:
                    mass = polar_box_integral(intensity, a1, b1, a2, b2, 8, 8);
                    break;
                case BinKind::Cartesian:
                    mass = box_integral(intensity, a1, b1, a2, b2, 8, 8);
                    break;
            }
            expected[b] = samples * mass;
            scale[b] = static_cast<double>(samples) * 2.0 * n * cfg.binning.bin_area(b);
        }
        if (cfg.binning.kind == BinKind::Radial) var_factor = 2.0;
        if (strong) {
            // gate against the exact layer before reporting vs the limit law
            std::vector<double> exact_expected(static_cast<std::size_t>(nb), 0.0);
            const RealFieldFn exact_intensity = [&](Complex z) -> double {
                return std::abs(z) > 1.0 ? 0.0 : 2.0 * R1_exact(ctx, z);
            };
            for (int b = 0; b < nb; ++b) {
                double a1, b1, a2, b2;
                cfg.binning.bin_bounds(b, a1, b1, a2, b2);
                switch (cfg.binning.kind) {
                    case BinKind::Radial:
                        exact_expected[b] =
                            samples * polar_box_integral(exact_intensity, a1, b1, 0.0, 2.0 * kPi, 8, 32);
                        break;
                    case BinKind::Angular:
                        exact_expected[b] =
                            samples * polar_box_integral(exact_intensity, 0.0, 1.0, a1, b1, 32, 8);
                        break;
                    case BinKind::Polar:
                        exact_expected[b] =
                            samples * polar_box_integral(exact_intensity, a1, b1, a2, b2, 8, 8);
                        break;
                    case BinKind::Cartesian:
                        exact_expected[b] = samples * box_integral(exact_intensity, a1, b1, a2, b2, 8, 8);
                        break;
                }
            }
            enforce_exact_layer(exact_expected, var_factor);
        }
    }

    ComparisonReport rep = compare(hist, expected, scale, var_factor);
    rep.name = "density";
    rep.params = describe(cfg);
    return rep;
}

ComparisonReport run_pair_correlation_experiment(const ExperimentConfig& cfg, Complex z0,
                                                 std::span<const double> radii, double ref_radius) {
    if (cfg.samples < 1) throw ConfigError("run_pair_correlation_experiment: samples must be >= 1");
    if (radii.size() < 2) throw ConfigError("need at least two annulus edges");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) throw ConfigError("annulus edges must be increasing");
    if (!(ref_radius > 0.0)) throw ConfigError("reference radius must be positive");

    // conjugation symmetry: canonicalise the reference point to the upper half
    if (z0.imag() < 0.0) z0 = std::conj(z0);
    const double rmax = radii.back();
    if (std::abs(z0) + rmax >= 1.0) throw ConfigError("annuli must stay inside the unit disk");
    if (z0.imag() - rmax <= 0.0)
        throw ConfigError("annuli must stay inside the upper half-plane (representative picture)");

    const int n_ann = static_cast<int>(radii.size()) - 1;
    const std::int64_t samples = cfg.samples;

    struct Acc {
        std::vector<std::int64_t> pairs;
        std::int64_t ref_hits{0};
    };
    std::vector<Acc> partial(static_cast<std::size_t>(resolve_threads(cfg.threads)));
    for (auto& a : partial) a.pairs.assign(static_cast<std::size_t>(n_ann), 0);

    fan_out(samples, cfg.threads, [&](std::int64_t s, int w) {
        const SpectrumSample sample =
            draw_spectrum(cfg.params, {cfg.seed, static_cast<std::uint64_t>(s)});
        Acc& acc = partial[static_cast<std::size_t>(w)];
        const auto& evs = sample.eigenvalues;
        for (std::size_t i = 0; i < evs.size(); ++i) {
            if (std::abs(evs[i] - z0) >= ref_radius) continue;
            ++acc.ref_hits;
            for (std::size_t j = 0; j < evs.size(); ++j) {
                if (j == i) continue;
                const double d = std::abs(evs[j] - z0);
                if (d < radii[0] || d >= radii.back()) continue;
                const auto it = std::upper_bound(radii.begin(), radii.end(), d);
                acc.pairs[static_cast<std::size_t>(it - radii.begin() - 1)] += 1;
            }
        }
    });

    std::vector<std::int64_t> pairs(static_cast<std::size_t>(n_ann), 0);
    std::int64_t ref_hits = 0;
    for (const Acc& a : partial) {
        ref_hits += a.ref_hits;
        for (int b = 0; b < n_ann; ++b) pairs[static_cast<std::size_t>(b)] += a.pairs[static_cast<std::size_t>(b)];
    }
    if (ref_hits == 0)
        throw StatisticsError("pair correlation: reference disk was never hit; more samples needed");

    // expected pairs: samples * int_{ref disk} du int_{annulus} dw R2+(u, w)
    KernelContext ctx(cfg.params.n_keep, cfg.params.m_removed);
    const double disk_area = kPi * ref_radius * ref_radius;
    BinningSpec rep_bins;  // annuli in separation |w - z0|
    rep_bins.kind = BinKind::Radial;
    rep_bins.lo1 = radii.front();
    rep_bins.hi1 = radii.back();
    rep_bins.n1 = n_ann;  // equal-width report bins are not assumed below

    Histogram hist(rep_bins);
    // annulus widths from the explicit edges (BinningSpec assumes equal widths,
    // so fill counts directly and carry geometry in the scale vectors)
    hist.counts.assign(static_cast<std::size_t>(n_ann), 0);
    for (int b = 0; b < n_ann; ++b) hist.counts[static_cast<std::size_t>(b)] = pairs[static_cast<std::size_t>(b)];

    const QuadRule& rd = gauss_legendre_01(4);
    std::vector<double> expected(static_cast<std::size_t>(n_ann), 0.0);
    std::vector<double> scale(static_cast<std::size_t>(n_ann), 0.0);
    for (int b = 0; b < n_ann; ++b) {
        const double r0 = radii[b], r1 = radii[b + 1];
        const double ann_area = kPi * (r1 * r1 - r0 * r0);
        // quadrature over both regions in local polar coordinates around z0
        double val = 0.0;
        for (std::size_t iu = 0; iu < rd.nodes.size(); ++iu) {
            const double su = ref_radius * ref_radius * rd.nodes[iu];
            const double ru = std::sqrt(su);
            for (int au = 0; au < 8; ++au) {
                const double alpha = 2.0 * kPi * (au + 0.5) / 8.0;
                const Complex u = z0 + std::polar(ru, alpha);
                const double wu = rd.weights[iu] * (ref_radius * ref_radius) * 0.5 * (2.0 * kPi / 8.0);
                const QuadRule& rs = gauss_legendre_01(6);
                for (std::size_t iw = 0; iw < rs.nodes.size(); ++iw) {
                    const double sw = r0 * r0 + (r1 * r1 - r0 * r0) * rs.nodes[iw];
                    const double rw = std::sqrt(sw);
                    for (int aw = 0; aw < 16; ++aw) {
                        const double beta = 2.0 * kPi * (aw + 0.5) / 16.0;
                        const Complex wpt = z0 + std::polar(rw, beta);
                        const double ww =
                            rs.weights[iw] * (r1 * r1 - r0 * r0) * 0.5 * (2.0 * kPi / 16.0);
                        val += wu * ww * 4.0 * R2_exact(ctx, u, wpt);
                    }
                }
            }
        }
        expected[b] = samples * val;
        scale[b] = static_cast<double>(samples) * disk_area * ann_area;  // R2+ density units
    }

    ComparisonReport rep = compare(hist, expected, scale, 1.0, 0.90);
    rep.name = "pair_correlation";
    rep.params = describe(cfg);
    // report separation bin centers from the true edges
    for (int b = 0; b < n_ann; ++b) {
        rep.per_bin[static_cast<std::size_t>(b)].center1 = 0.5 * (radii[b] + radii[b + 1]);
        rep.per_bin[static_cast<std::size_t>(b)].center2 = 0.0;
    }
    return rep;
}

ComparisonReport run_edge_experiment(const ExperimentConfig& cfg) {
    if (cfg.samples < 1) throw ConfigError("run_edge_experiment: samples must be >= 1");
    cfg.binning.validate();
    if (cfg.binning.kind != BinKind::Cartesian)
        throw ConfigError("edge experiment requires cartesian binning in the microscopic (x, y)");

    const int n = cfg.params.n_keep;
    const int m = cfg.params.m_removed;
    const std::int64_t samples = cfg.samples;
    const int nb = cfg.binning.total_bins();

    std::vector<Histogram> partial(static_cast<std::size_t>(resolve_threads(cfg.threads)),
                                   Histogram(cfg.binning));
    fan_out(samples, cfg.threads, [&](std::int64_t s, int w) {
        const SpectrumSample sample =
            draw_spectrum(cfg.params, {cfg.seed, static_cast<std::uint64_t>(s)});
        for (const Complex& ev : sample.eigenvalues) {
            const Complex micro = static_cast<double>(n) * (1.0 - ev);
            partial[static_cast<std::size_t>(w)].add(micro);
            partial[static_cast<std::size_t>(w)].add(std::conj(micro));
        }
    });
    Histogram hist(cfg.binning);
    for (const Histogram& p : partial) hist.merge(p);

    std::vector<double> expected(static_cast<std::size_t>(nb), 0.0);
    std::vector<double> scale(static_cast<std::size_t>(nb), 0.0);
    const RealFieldFn density = [&](Complex w) -> double {
        if (!(w.real() > 0.0)) return 0.0;
        return edge_density(m, w.real(), w.imag());
    };
    for (int b = 0; b < nb; ++b) {
        double a1, b1, a2, b2;
        cfg.binning.bin_bounds(b, a1, b1, a2, b2);
        const double mass = b1 <= 0.0 ? 0.0 : box_integral(density, a1, b1, a2, b2, 8, 8);
        expected[b] = samples * 2.0 * mass;
        scale[b] = static_cast<double>(samples) * 2.0 * cfg.binning.bin_area(b);
    }

    ComparisonReport rep = compare(hist, expected, scale);
    rep.name = "edge";
    rep.params = describe(cfg);
    return rep;
}

}  // namespace truncsp
