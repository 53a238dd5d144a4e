// Acceptance suite: cross-validates the Monte Carlo, exact finite-N, and
// asymptotic layers. One line per criterion; exit code is the number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "truncsp/asymptotics.hpp"
#include "truncsp/harness.hpp"
#include "truncsp/kernel.hpp"
#include "truncsp/pfaffian.hpp"
#include "truncsp/quadrature.hpp"
#include "truncsp/rng.hpp"
#include "truncsp/sampler.hpp"

using namespace truncsp;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::pair<int, int> cases[] = {{1, 1}, {2, 1}, {3, 2}, {5, 3}};
    double worst = 0.0;
    for (const auto& [n, m] : cases) {
        const KernelContext ctx(n, m);
        const int nr = std::max(64, 2 * (n + m) + 8);
        const int nt = std::max(128, 8 * n + 8);
        const double total = disk_integral([&](Complex z) { return R1_exact(ctx, z); }, nr, nt);
        worst = std::max(worst, std::abs(total - n));
    }
    const double dt = seconds_since(t0);
    report("C1 normalization", worst < 1e-6 && dt < 30.0,
           fmt("sup |int R1 - N| = %.2e over {(1,1),(2,1),(3,2),(5,3)}, %.1f s", worst, dt));
}

void criterion_2() {
    const KernelContext ctx(1, 1);
    const double r1 = R1_exact(ctx, Complex(0.0, 0.5));
    const double err_r1 = std::abs(r1 - 2.25 / kPi) / (2.25 / kPi);

    // brute-force polar integration of |l - l*|^2 (1 - |l|^2) over the disk
    const double z_quad = disk_integral(
        [](Complex z) { return std::norm(z - std::conj(z)) * (1.0 - std::norm(z)); }, 64, 128);
    const double z_formula =
        std::exp(log_normalization(TruncationParams(1, 1), DiskConvention::FullDisk));
    const double err_z = std::max(std::abs(z_quad - kPi / 3.0), std::abs(z_formula - kPi / 3.0));

    report("C2 closed-form anchor", err_r1 < 1e-12 && err_z < 1e-12,
           fmt("R1(0.5i) rel err %.2e; |Z_{1,1} - pi/3| = %.2e (quadrature oracle and formula)",
               err_r1, err_z));
}

void criterion_3() {
    const std::pair<int, int> cases[] = {{3, 1}, {3, 2}, {2, 3}};
    double worst = 0.0;
    for (const auto& [n, m] : cases) {
        for (int a = 0; a < 2 * n; ++a) {
            const auto fa = sop_coeffs(a, m);
            for (int b = 0; b < 2 * n; ++b) {
                const auto fb = sop_coeffs(b, m);
                double want = 0.0;
                if (a % 2 == 1 && b % 2 == 0 && a / 2 == b / 2) want = skew_product_mono(a - 1, 1, m);
                if (a % 2 == 0 && b % 2 == 1 && a / 2 == b / 2) want = -skew_product_mono(b - 1, 1, m);
                const double got = skew_product_quad(fa, fb, m, 64);
                const double rk = std::abs(skew_product_mono(2 * (std::max(a, b) / 2), 1, m));
                worst = std::max(worst, std::abs(got - want) / (1.0 + rk));
            }
        }
    }
    report("C3 skew-orthogonality", worst < 1e-7,
           fmt("sup scaled residual %.2e over (3,1),(3,2),(2,3)", worst));
}

void criterion_4() {
    CounterRng rng({424242u, 0u});
    double worst_pf = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int dim = 2 * (1 + static_cast<int>(rng.uniform() * 6));
        SkewSymmetricMat a(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) a.upper(i, j) = Complex(rng.normal(), rng.normal());
        const Complex pf = pfaffian(a);
        const Complex det = a.dense().determinant();
        worst_pf = std::max(worst_pf, std::abs(pf * pf - det) / std::abs(det));
    }

    const KernelContext ctx(4, 2);
    double worst_rn = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Complex z1 = std::polar(0.92 * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
        const Complex z2 = std::polar(0.92 * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
        const Complex two[] = {z1, z2};
        const double a = Rn_exact(ctx, two);
        const double b = R2_exact(ctx, z1, z2);
        worst_rn = std::max(worst_rn, std::abs(a - b) / (1.0 + std::abs(b)));
    }
    report("C4 pfaffian", worst_pf < 1e-9 && worst_rn < 1e-10,
           fmt("sup |Pf^2 - det|/|det| = %.2e (200 draws); sup |Rn - R2| = %.2e (50 pairs)",
               worst_pf, worst_rn));
}

void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.params = TruncationParams(4, 2);
    cfg.samples = 200000;
    cfg.seed = 51515u;
    cfg.oracle.kind = OracleSpec::Kind::ExactFiniteN;
    cfg.binning = BinningSpec{BinKind::Polar, 0.0, 1.0, 40, 0.0, 2.0 * kPi, 24};
    const ComparisonReport rep = run_density_experiment(cfg);
    const double dt = seconds_since(t0);
    report("C5 monte-carlo vs exact", rep.summary.frac_within_3sigma >= 0.95 && dt < 600.0,
           fmt("%.1f%% of occupied bins within 3 sigma (sup |z| = %.2f), %.1f s",
               100.0 * rep.summary.frac_within_3sigma, rep.summary.sup_abs_z, dt));
}

void criterion_6() {
    double worst_unitarity = 0.0;
    for (int t = 0; t < 1000; ++t) {
        CounterRng rng({616161u, static_cast<std::uint64_t>(t)});
        const QuaternionMatrix u = haar_unitary_quaternion(16, rng);
        const ComplexMat a = to_complex_rep(u);
        worst_unitarity = std::max(
            worst_unitarity,
            (a.adjoint() * a - ComplexMat::Identity(32, 32)).cwiseAbs().maxCoeff());
    }

    ExperimentConfig cfg;
    cfg.params = TruncationParams(60, 1);  // M ignored for the eigenangle draw
    cfg.samples = 10000;
    cfg.seed = 606060u;
    cfg.oracle.kind = OracleSpec::Kind::SpEigenangle;
    cfg.binning = BinningSpec{BinKind::Angular, 0.0, 2.0 * kPi, 48, 0.0, 0.0, 1};
    const ComparisonReport rep = run_density_experiment(cfg);

    report("C6 sampler validity",
           worst_unitarity < 1e-10 && rep.summary.frac_within_3sigma >= 0.95,
           fmt("sup ||U+U - I|| = %.2e (1000 draws dim 16); eigenangle bins within 3 sigma: %.1f%%",
               worst_unitarity, 100.0 * rep.summary.frac_within_3sigma));
}

void criterion_7() {
    CounterRng rng({777777u, 0u});
    double worst = 0.0;
    int done = 0;
    while (done < 10) {
        const int m = 1 + static_cast<int>(rng.uniform() * 5);
        const Complex u = std::polar(0.8 * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
        const Complex v = std::polar(0.8 * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
        if (std::abs(u - v) < 1e-2) continue;
        const Complex a = prekernel_contour(m, u, v, 0.4, 512);
        const Complex b = prekernel_g_inf(m, u, v, 1e-13);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
        ++done;
    }
    report("C7 contour vs series", worst < 1e-8, fmt("sup rel err %.2e over 10 triples", worst));
}

void criterion_8() {
    const Complex z(0.3, 0.3);
    const double target = density_strong(1.0, z);
    std::vector<double> errs;
    for (int n : {10, 20, 40}) {
        const KernelContext ctx(n, n);
        errs.push_back(std::abs(R1_exact(ctx, z) / n - target));
    }
    const bool decreasing = errs[0] > errs[1] && errs[1] > errs[2];
    const double final_rel = errs[2] / target;
    report("C8 strong limit", decreasing && final_rel < 0.10,
           fmt("errors %.4f > %.4f > %.4f, final rel %.1f%%", errs[0], errs[1], errs[2],
               100.0 * final_rel));
}

void criterion_9() {
    const Complex z0(0.2, 0.3);
    bool all_decreasing = true;
    std::string detail;
    for (double s : {0.2, 0.5, 1.0}) {
        const double target = 1.0 - std::exp(-2.0 * kPi * s * s);
        std::vector<double> errs;
        for (int n : {10, 20, 40}) {
            const KernelContext ctx(n, n);
            const double r1 = R1_exact(ctx, z0);
            // unfolded separation taken along the imaginary direction
            const Complex z2 = z0 + Complex(0.0, s / std::sqrt(r1));
            const double ratio = R2_exact(ctx, z0, z2) / (r1 * R1_exact(ctx, z2));
            errs.push_back(std::abs(ratio - target));
        }
        const bool dec = errs[0] > errs[1] && errs[1] > errs[2];
        all_decreasing = all_decreasing && dec;
        detail += fmt("s=%.1f: %.4f>%.4f>%.4f%s  ", s, errs[0], errs[1], errs[2], dec ? "" : " (!)");
    }
    report("C9 bulk universality", all_decreasing, detail);
}

void criterion_10() {
    double worst_identity = 0.0;
    for (int m : {1, 2, 3})
        for (double q : {0.3, 1.0, 3.0}) {
            const double lhs = weak_density_scaled(m, q);
            const double rhs = 4.0 / kPi * h_profile(2 * m, q / kPi);
            worst_identity = std::max(worst_identity, std::abs(lhs - rhs) / rhs);
        }

    const int n = 300;
    const KernelContext ctx(n, 1);
    const double q = 1.0;
    const double wds = weak_density_scaled(1, q);
    double fin_mid = 0.0, spread = 0.0, fmin = 1e300, fmax = 0.0;
    for (double phi0 : {kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0}) {
        const Complex z = (1.0 - q / n) * std::polar(1.0, phi0);
        const double fin = 2.0 * R1_exact(ctx, z) / (static_cast<double>(n) * n);
        if (phi0 == kPi / 2.0) fin_mid = fin;
        fmin = std::min(fmin, fin);
        fmax = std::max(fmax, fin);
    }
    spread = (fmax - fmin) / fmin;
    const double err_fin = std::abs(fin_mid - wds) / wds;

    report("C10 weak limit",
           worst_identity < 1e-10 && err_fin < 0.03 && spread < 0.02,
           fmt("identity sup rel %.2e; finite-N rel err %.2f%%; phi0 spread %.2f%%",
               worst_identity, 100.0 * err_fin, 100.0 * spread));
}

void criterion_11() {
    const int n = 400;
    const KernelContext ctx(n, 1);
    const std::pair<double, double> pts[] = {
        {0.5, 1.0}, {0.5, 2.0}, {1.0, 1.0}, {1.5, 0.5}, {0.8, 1.6}};
    double worst = 0.0;
    for (const auto& [x, y] : pts) {
        const Complex z = 1.0 - Complex(x, y) / static_cast<double>(n);
        const double fin = R1_exact(ctx, z) / (static_cast<double>(n) * n);
        const double asym = edge_density(1, x, y);
        worst = std::max(worst, std::abs(fin - asym) / asym);
    }

    const std::vector<double> maxima = microscopic_f_maxima(5);
    const double expect[] = {0.715, 1.735, 2.741, 3.743, 4.745};
    double worst_max = 0.0;
    for (int i = 0; i < 5; ++i) worst_max = std::max(worst_max, std::abs(maxima[i] - expect[i]));

    report("C11 edge", worst < 0.03 && worst_max <= 1e-3,
           fmt("edge density sup rel err %.2f%% on 5 points; f maxima within %.4f", 100.0 * worst,
               worst_max));
}

void criterion_12() {
    const Complex z = std::polar(std::sqrt(0.7), kPi / 4.0);
    const double bound = decay_rate(1.0, 0.7) + 0.1;
    std::vector<double> vals;
    for (int n : {20, 40, 80}) {
        const KernelContext ctx(n, n);
        vals.push_back(std::log(R1_exact(ctx, z)) / n);
    }
    const bool ok = vals[0] < 0.0 && vals[1] < vals[0] && vals[2] < vals[1] && vals[2] <= bound;
    report("C12 annulus decay", ok,
           fmt("(1/N) log R1 = %.4f > %.4f > %.4f, bound %.4f", vals[0], vals[1], vals[2], bound));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%d/12 criteria passed in %.1f s\n", 12 - failures, seconds_since(t0));
    return failures;
}
