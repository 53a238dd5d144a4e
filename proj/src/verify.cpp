#include "truncsp/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "truncsp/asymptotics.hpp"
#include "truncsp/harness.hpp"
#include "truncsp/kernel.hpp"
#include "truncsp/pfaffian.hpp"
#include "truncsp/quadrature.hpp"
#include "truncsp/rng.hpp"
#include "truncsp/sampler.hpp"
#include "truncsp/special.hpp"

namespace truncsp {

namespace {

constexpr double kPi = std::numbers::pi;

double loosen(const VerifyOptions& opts, double tol) {
    return opts.tol_override ? std::max(tol, *opts.tol_override) : tol;
}

CheckResult make_check(std::string name, std::string params, double value, double oracle,
                       double tol, bool relative) {
    CheckResult c;
    c.name = std::move(name);
    c.params = std::move(params);
    c.value = value;
    c.oracle = oracle;
    c.abs_err = std::abs(value - oracle);
    c.rel_err = std::abs(oracle) > 1e-12 ? c.abs_err / std::abs(oracle) : c.abs_err;
    c.pass = (relative ? c.rel_err : c.abs_err) <= tol;
    return c;
}

Complex random_point(CounterRng& rng, double rmax) {
    const double r = rmax * std::sqrt(rng.uniform());
    const double phi = 2.0 * kPi * rng.uniform();
    return std::polar(r, phi);
}

// pre-kernel through the skew-orthogonal-polynomial route,
// sum_k [q_{2k+1}(z) q_{2k}(w) - q_{2k+1}(w) q_{2k}(z)] / r_k
Complex prekernel_sop_route(const KernelContext& ctx, Complex z, Complex w) {
    Complex acc = 0.0;
    for (int k = 0; k < ctx.n(); ++k) {
        const double rk = skew_product_mono(2 * k, 1, ctx.m());
        acc += (sop_eval(2 * k + 1, ctx, z) * sop_eval(2 * k, ctx, w) -
                sop_eval(2 * k + 1, ctx, w) * sop_eval(2 * k, ctx, z)) /
               rk;
    }
    return acc;
}

}  // namespace

std::vector<CheckResult> verify_kernels(const VerifyOptions& opts) {
    std::vector<CheckResult> out;

    out.push_back(make_check("kernels/log_beta_11", "p=1 q=1", log_beta(1.0, 1.0), 0.0,
                             loosen(opts, 1e-14), false));
    out.push_back(make_check("kernels/log_beta_half", "p=1/2 q=1", log_beta(0.5, 1.0),
                             std::log(2.0), loosen(opts, 1e-14), false));
    out.push_back(make_check("kernels/log_beta_22", "p=2 q=2", log_beta(2.0, 2.0),
                             std::log(1.0 / 6.0), loosen(opts, 1e-14), false));

    {
        // ladder recurrences against direct log-gamma evaluation
        const int n = 50, m = 3;
        KernelContext ctx(n, m);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(ctx.log_b_even()[i] - log_beta(i + 1.0, m)));
            worst = std::max(worst, std::abs(ctx.log_b_odd()[i] - log_beta(i + 1.5, m)));
        }
        out.push_back(
            make_check("kernels/ladder_recurrence", "N=50 M=3", worst, 0.0, loosen(opts, 1e-12), false));
    }

    {
        // skew-orthogonality of the polynomials under the quadrature oracle
        const std::pair<int, int> cases[] = {{3, 1}, {3, 2}, {2, 3}};
        for (const auto& [n, m] : cases) {
            KernelContext ctx(n, m);
            (void)ctx;
            double worst = 0.0;
            for (int a = 0; a < 2 * n; ++a) {
                const auto fa = sop_coeffs(a, m);
                for (int b = 0; b < 2 * n; ++b) {
                    const auto fb = sop_coeffs(b, m);
                    double want = 0.0;
                    if (a % 2 == 1 && b % 2 == 0 && a / 2 == b / 2)
                        want = skew_product_mono(a - 1, 1, m);
                    else if (a % 2 == 0 && b % 2 == 1 && a / 2 == b / 2)
                        want = -skew_product_mono(b - 1, 1, m);
                    const double got = skew_product_quad(fa, fb, m, 64);
                    const double rk = std::abs(skew_product_mono(2 * (std::max(a, b) / 2), 1, m));
                    worst = std::max(worst, std::abs(got - want) / (1.0 + rk));
                }
            }
            std::ostringstream ps;
            ps << "N=" << n << " M=" << m;
            out.push_back(make_check("kernels/skew_orthogonality", ps.str(), worst, 0.0,
                                     loosen(opts, 1e-7), false));
        }
    }

    {
        // ladder route vs skew-orthogonal-polynomial route for g_N
        const int n = 6, m = 2;
        KernelContext ctx(n, m);
        if (opts.fault == InjectedFault::LadderOffByOne) ctx.debug_shift_ladder();
        CounterRng rng({20240u, 7u});
        double worst = 0.0;
        for (int t = 0; t < 8; ++t) {
            const Complex z = random_point(rng, 0.95);
            const Complex w = random_point(rng, 0.95);
            const Complex a = prekernel_gN(ctx, z, w);
            const Complex b = prekernel_sop_route(ctx, z, w);
            worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
        }
        out.push_back(make_check("kernels/skew_orthogonality_prekernel", "N=6 M=2", worst, 0.0,
                                 loosen(opts, 1e-10), false));
    }

    {
        KernelContext ctx(1, 1);
        out.push_back(make_check("kernels/r1_anchor", "N=1 M=1 z=0.5i",
                                 R1_exact(ctx, Complex(0.0, 0.5)), 2.25 / kPi,
                                 loosen(opts, 1e-12), true));
    }

    {
        KernelContext ctx(3, 2);
        const double integral =
            disk_integral([&](Complex z) { return R1_exact(ctx, z); }, 64, 128);
        out.push_back(make_check("kernels/r1_normalization", "N=3 M=2", integral, 3.0,
                                 loosen(opts, 1e-6), false));
    }

    {
        // Pf^2 = det on random skew matrices
        CounterRng rng({99u, 1u});
        double worst = 0.0;
        for (int t = 0; t < 25; ++t) {
            const int dim = 2 * (1 + static_cast<int>(rng.uniform() * 6));
            SkewSymmetricMat a(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = i + 1; j < dim; ++j)
                    a.upper(i, j) = Complex(rng.normal(), rng.normal());
            const Complex pf = pfaffian(a);
            const Complex det = a.dense().determinant();
            worst = std::max(worst, std::abs(pf * pf - det) / std::max(1e-300, std::abs(det)));
        }
        out.push_back(
            make_check("kernels/pfaffian_det", "25 random dims 2..12", worst, 0.0, loosen(opts, 1e-9), false));
    }

    {
        // R_n consistency with R_1 and R_2
        KernelContext ctx(4, 2);
        CounterRng rng({5u, 3u});
        double worst1 = 0.0, worst2 = 0.0;
        for (int t = 0; t < 10; ++t) {
            const Complex z1 = random_point(rng, 0.9);
            const Complex z2 = random_point(rng, 0.9);
            const Complex one[] = {z1};
            const Complex two[] = {z1, z2};
            worst1 = std::max(worst1, std::abs(Rn_exact(ctx, one) - R1_exact(ctx, z1)) /
                                          (1.0 + std::abs(R1_exact(ctx, z1))));
            worst2 = std::max(worst2, std::abs(Rn_exact(ctx, two) - R2_exact(ctx, z1, z2)) /
                                          (1.0 + std::abs(R2_exact(ctx, z1, z2))));
        }
        out.push_back(make_check("kernels/rn_reduces_r1", "N=4 M=2", worst1, 0.0,
                                 loosen(opts, 1e-12), false));
        out.push_back(make_check("kernels/rn_reduces_r2", "N=4 M=2", worst2, 0.0,
                                 loosen(opts, 1e-10), false));
    }

    return out;
}

std::vector<CheckResult> verify_sampler(const VerifyOptions& opts) {
    std::vector<CheckResult> out;

    {
        double worst = 0.0;
        for (int dim : {1, 5, 16}) {
            CounterRng rng({4242u, static_cast<std::uint64_t>(dim)});
            const QuaternionMatrix u = haar_unitary_quaternion(dim, rng);
            const ComplexMat a = to_complex_rep(u);
            const double dev =
                (a.adjoint() * a - ComplexMat::Identity(2 * dim, 2 * dim)).cwiseAbs().maxCoeff();
            worst = std::max(worst, dev);
        }
        out.push_back(make_check("sampler/unitarity", "dims 1,5,16", worst, 0.0,
                                 loosen(opts, 1e-10), false));
    }

    {
        const TruncationParams p(4, 2);
        const SpectrumSample s1 = draw_spectrum(p, {123u, 9u});
        const SpectrumSample s2 = draw_spectrum(p, {123u, 9u});
        double dev = s1.eigenvalues.size() == s2.eigenvalues.size() ? 0.0 : 1.0;
        for (std::size_t i = 0; dev == 0.0 && i < s1.eigenvalues.size(); ++i)
            if (s1.eigenvalues[i] != s2.eigenvalues[i]) dev = 1.0;
        out.push_back(make_check("sampler/determinism", "N=4 M=2 seed=123/9", dev, 0.0, 0.0, false));
    }

    {
        const TruncationParams p(4, 2);
        double worst_mod = 0.0, worst_res = 0.0;
        bool count_ok = true;
        for (std::uint64_t s = 0; s < 32; ++s) {
            const SpectrumSample sample = draw_spectrum(p, {2026u, s});
            count_ok = count_ok && static_cast<int>(sample.eigenvalues.size()) == p.n_keep;
            worst_res = std::max(worst_res, sample.pairing_residual);
            for (const Complex& ev : sample.eigenvalues) worst_mod = std::max(worst_mod, std::abs(ev));
        }
        out.push_back(make_check("sampler/contraction", "N=4 M=2, 32 draws", worst_mod, 0.0,
                                 1.0, false));
        out.back().pass = count_ok && worst_mod < 1.0;
        out.push_back(make_check("sampler/pairing_residual", "N=4 M=2, 32 draws", worst_res, 0.0,
                                 loosen(opts, 1e-8), false));
    }

    {
        // quick eigenangle density check at small dimension
        ExperimentConfig cfg;
        cfg.params = TruncationParams(6, 1);
        cfg.samples = 4000;
        cfg.seed = 31u;
        cfg.threads = opts.threads;
        cfg.oracle.kind = OracleSpec::Kind::SpEigenangle;
        cfg.binning = BinningSpec{BinKind::Angular, 0.0, 2.0 * kPi, 24, 0.0, 0.0, 1};
        const ComparisonReport rep = run_density_experiment(cfg);
        out.push_back(make_check("sampler/eigenangle_density", "N=6, 4000 draws, 24 bins",
                                 rep.summary.frac_within_3sigma, 1.0, loosen(opts, 0.05), false));
    }

    return out;
}

std::vector<CheckResult> verify_asymptotics(const VerifyOptions& opts) {
    std::vector<CheckResult> out;

    {
        // contour representation against the convergent series
        CounterRng rng({777u, 2u});
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            const int m = 1 + static_cast<int>(rng.uniform() * 5);
            const Complex u = random_point(rng, 0.8);
            const Complex v = random_point(rng, 0.8);
            if (std::abs(u - v) < 1e-3) continue;
            const Complex a = prekernel_contour(m, u, v, 0.4, 512);
            const Complex b = prekernel_g_inf(m, u, v, 1e-13);
            worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(b)));
        }
        out.push_back(make_check("asymptotics/contour_vs_series", "10 random (M<=5,u,v)", worst,
                                 0.0, loosen(opts, 1e-8), false));
    }

    {
        double worst = 0.0;
        for (int m : {1, 2, 3})
            for (double q : {0.3, 1.0, 3.0}) {
                const double lhs = weak_density_scaled(m, q);
                const double rhs = 4.0 / kPi * h_profile(2 * m, q / kPi);
                worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
            }
        out.push_back(make_check("asymptotics/weak_vs_h_profile", "M=1..3, q=0.3,1,3", worst, 0.0,
                                 loosen(opts, 1e-10), false));
    }

    {
        const std::vector<double> maxima = microscopic_f_maxima(5);
        const double expect[] = {0.715, 1.735, 2.741, 3.743, 4.745};
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(maxima[i] - expect[i]));
        out.push_back(make_check("asymptotics/f_maxima", "first five", worst, 0.0,
                                 loosen(opts, 1e-3), false));
    }

    {
        // pi-scaled and unscaled edge densities related by (x,y) -> (pi x, pi y)
        double worst = 0.0;
        for (int m : {1, 2})
            for (double x : {0.3, 0.8})
                for (double y : {0.5, 1.5}) {
                    const double a = edge_density(m, x, y, true);
                    const double b = edge_density(m, kPi * x, kPi * y, false);
                    worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(b)));
                }
        out.push_back(make_check("asymptotics/edge_convention", "grid", worst, 0.0,
                                 loosen(opts, 1e-10), false));
    }

    {
        const Complex a = weak_prekernel_general(1, 0.4, 0.7, 0.2, -0.1, 1.1);
        const Complex b = weak_prekernel_m1(0.4, 0.7, 0.2, -0.1, 1.1);
        out.push_back(make_check("asymptotics/weak_m1_consistency", "q=(0.4,0.7)", std::abs(a - b),
                                 0.0, loosen(opts, 1e-12), false));
    }

    {
        const double r = 0.1;
        const double c = 4.0 * kPi * r;
        const double closed = (1.0 - std::exp(-c) * (1.0 + c)) / (c * c);
        out.push_back(make_check("asymptotics/h1_closed_form", "r=0.1", h_profile(1, r), closed,
                                 loosen(opts, 1e-12), true));
    }

    {
        out.push_back(make_check("asymptotics/decay_rate_zero", "a=1 x=0.5", decay_rate(1.0, 0.5),
                                 0.0, loosen(opts, 1e-14), false));
        out.push_back(make_check("asymptotics/decay_rate_075", "a=1 x=0.75", decay_rate(1.0, 0.75),
                                 std::log(0.75), loosen(opts, 1e-14), false));
    }

    {
        const Complex s1(0.2, 0.1), s2(-0.3, 0.4);
        const Complex pts[] = {s1, s2};
        const double det = ginibre_corr_det(pts);
        const double closed = 1.0 - std::exp(-2.0 * kPi * std::norm(s1 - s2));
        out.push_back(make_check("asymptotics/ginibre_det_n2", "two points", det, closed,
                                 loosen(opts, 1e-12), true));
    }

    return out;
}

std::vector<CheckResult> verify_all(const VerifyOptions& opts) {
    std::vector<CheckResult> out = verify_kernels(opts);
    const auto s = verify_sampler(opts);
    const auto a = verify_asymptotics(opts);
    out.insert(out.end(), s.begin(), s.end());
    out.insert(out.end(), a.begin(), a.end());
    return out;
}

}  // namespace truncsp
