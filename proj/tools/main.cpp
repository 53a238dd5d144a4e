// truncsp: sample truncated symplectic unitary ensembles, evaluate their
// exact and asymptotic spectral statistics, and cross-validate the layers.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "truncsp/asymptotics.hpp"
#include "truncsp/harness.hpp"
#include "truncsp/io.hpp"
#include "truncsp/kernel.hpp"
#include "truncsp/sampler.hpp"
#include "truncsp/verify.hpp"

namespace {

using namespace truncsp;
constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

// RMT_SEED overrides --seed when set
std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("RMT_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw std::invalid_argument("RMT_SEED must be an unsigned integer");
        }
    }
    return flag_seed;
}

struct OutputTarget {
    std::string path;  // empty -> stdout

    void write(const std::string& content) const {
        if (path.empty()) {
            std::cout << content;
            return;
        }
        std::ofstream os(path);
        if (!os) throw std::ios_base::failure("cannot open output file '" + path + "'");
        os << content;
        if (!os.flush()) throw std::ios_base::failure("write failed for '" + path + "'");
    }
};

int run_sample(int n, int m, std::int64_t samples, std::uint64_t seed, const OutputTarget& out) {
    const TruncationParams params(n, m);
    std::vector<SpectrumSample> all(static_cast<std::size_t>(samples));
    for (std::int64_t s = 0; s < samples; ++s)
        all[static_cast<std::size_t>(s)] = draw_spectrum(params, {seed, static_cast<std::uint64_t>(s)});
    std::ostringstream os;
    write_eigenvalue_csv(os, all);
    out.write(os.str());
    return kExitOk;
}

std::string grid_csv_header() { return "x,y,density\n"; }

struct PairPoint {
    bool active{false};
    double re{0.0}, im{0.0};
};

int run_density(const std::string& mode, int n, int m, double a, std::int64_t samples,
                std::uint64_t seed, int grid, double qmin, double qmax, int points, double xmax,
                double ymax, bool raw, const PairPoint& pair, const OutputTarget& out,
                const std::string& format, int threads) {
    std::ostringstream os;
    if (mode == "exact") {
        const KernelContext ctx(n, m);
        if (pair.active) {
            // R2 grid over z2 at fixed z1
            const Complex z1(pair.re, pair.im);
            os << "re1,im1,re2,im2,R2\n";
            for (int i = 0; i < grid; ++i) {
                const double x = -1.0 + (2.0 * i + 1.0) / grid;
                for (int j = 0; j < grid; ++j) {
                    const double y = -1.0 + (2.0 * j + 1.0) / grid;
                    const Complex z2(x, y);
                    if (std::abs(z2) > 1.0) continue;
                    os << format_double(z1.real()) << ',' << format_double(z1.imag()) << ','
                       << format_double(x) << ',' << format_double(y) << ','
                       << format_double(R2_exact(ctx, z1, z2)) << '\n';
                }
            }
        } else {
            os << (raw ? "re,im,R1\n" : grid_csv_header());
            for (int i = 0; i < grid; ++i) {
                const double x = -1.0 + (2.0 * i + 1.0) / grid;
                for (int j = 0; j < grid; ++j) {
                    const double y = -1.0 + (2.0 * j + 1.0) / grid;
                    const Complex z(x, y);
                    if (std::abs(z) > 1.0) continue;
                    const double r1 = R1_exact(ctx, z);
                    os << format_double(x) << ',' << format_double(y) << ','
                       << format_double(raw ? r1 : r1 / n) << '\n';
                }
            }
        }
    } else if (mode == "strong") {
        os << grid_csv_header();
        for (int i = 0; i < grid; ++i) {
            const double x = -1.0 + (2.0 * i + 1.0) / grid;
            for (int j = 0; j < grid; ++j) {
                const double y = -1.0 + (2.0 * j + 1.0) / grid;
                const Complex z(x, y);
                if (std::abs(z) >= 1.0) continue;
                os << format_double(x) << ',' << format_double(y) << ','
                   << format_double(density_strong(a, z)) << '\n';
            }
        }
    } else if (mode == "weak") {
        os << "r,density\n";
        for (int i = 0; i < points; ++i) {
            const double q = qmin + (qmax - qmin) * (i + 0.5) / points;
            os << format_double(q) << ',' << format_double(weak_density_scaled(m, q)) << '\n';
        }
    } else if (mode == "edge") {
        os << grid_csv_header();
        for (int i = 0; i < grid; ++i) {
            const double x = xmax * (i + 0.5) / grid;
            for (int j = 0; j < grid; ++j) {
                const double y = -ymax + 2.0 * ymax * (j + 0.5) / grid;
                os << format_double(x) << ',' << format_double(y) << ','
                   << format_double(edge_density(m, x, y)) << '\n';
            }
        }
    } else {  // mc
        ExperimentConfig cfg;
        cfg.params = TruncationParams(n, m);
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.oracle.kind = OracleSpec::Kind::ExactFiniteN;
        cfg.binning = BinningSpec{BinKind::Polar, 0.0, 1.0, 40, 0.0, 2.0 * kPi, 24};
        const ComparisonReport rep = run_density_experiment(cfg);
        if (format == "json") {
            os << report_to_json(rep).dump(2) << '\n';
        } else {
            write_report_csv(os, rep);
        }
    }
    out.write(os.str());
    return kExitOk;
}

int run_corr(int n, int m, std::int64_t samples, std::uint64_t seed, double z0_re, double z0_im,
             double eps, const std::vector<double>& radii, const OutputTarget& out,
             const std::string& format, int threads) {
    ExperimentConfig cfg;
    cfg.params = TruncationParams(n, m);
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.threads = threads;
    const ComparisonReport rep =
        run_pair_correlation_experiment(cfg, Complex(z0_re, z0_im), radii, eps);
    std::ostringstream os;
    if (format == "json") {
        os << report_to_json(rep).dump(2) << '\n';
    } else {
        write_report_csv(os, rep);
    }
    out.write(os.str());
    return kExitOk;
}

int run_asympt(const std::string& what, int n, int m, double lo, double hi, int points,
               const OutputTarget& out) {
    std::ostringstream os;
    os << "param,value,oracle,abs_err\n";
    for (int i = 0; i < points; ++i) {
        const double t = lo + (hi - lo) * (i + 0.5) / points;
        double value = 0.0, oracle = 0.0;
        if (what == "h") {
            value = h_profile(m, t);
            oracle = value;
        } else if (what == "weak") {
            value = weak_density_scaled(m, t);
            oracle = 4.0 / kPi * h_profile(2 * m, t / kPi);  // cross-formula identity
        } else if (what == "f") {
            value = microscopic_f(t);
            oracle = value;
        } else if (what == "spangle") {
            value = sp_eigenangle_density(n, t);
            oracle = value;
        } else if (what == "decay") {
            value = decay_rate(1.0, t);
            oracle = value;
        } else {
            throw std::invalid_argument("unknown sweep '" + what + "' for --what");
        }
        os << format_double(t) << ',' << format_double(value) << ',' << format_double(oracle)
           << ',' << format_double(std::abs(value - oracle)) << '\n';
    }
    out.write(os.str());
    return kExitOk;
}

int run_verify(const std::string& suite, std::optional<double> tol, const std::string& fault,
               const OutputTarget& out, int threads) {
    VerifyOptions opts;
    opts.tol_override = tol;
    opts.threads = threads;
    if (fault == "ladder-off-by-one")
        opts.fault = InjectedFault::LadderOffByOne;
    else if (!fault.empty() && fault != "none")
        throw std::invalid_argument("unknown fault '" + fault + "' for --inject-fault");

    std::vector<CheckResult> results;
    if (suite == "all")
        results = verify_all(opts);
    else if (suite == "kernels")
        results = verify_kernels(opts);
    else if (suite == "sampler")
        results = verify_sampler(opts);
    else
        results = verify_asymptotics(opts);

    nlohmann::json j = nlohmann::json::array();
    bool all_pass = true;
    std::string first_fail;
    for (const CheckResult& c : results) {
        j.push_back({{"check_name", c.name},
                     {"params", c.params},
                     {"value", c.value},
                     {"oracle", c.oracle},
                     {"abs_err", c.abs_err},
                     {"rel_err", c.rel_err},
                     {"pass", c.pass}});
        if (!c.pass && all_pass) {
            all_pass = false;
            first_fail = c.name;
        }
    }
    out.write(j.dump(2) + "\n");
    if (!all_pass) {
        std::cerr << "verification failed: " << first_fail << "\n";
        return kExitVerify;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated symplectic unitary ensembles: sampling, exact kernels, asymptotics"};
    app.require_subcommand(1);

    int n = 4, m = 2, grid = 200, points = 200, threads = 0;
    std::int64_t samples = 1000;
    std::uint64_t seed = 0;
    std::string out_path, format = "csv", mode = "exact", what = "h", suite = "all";
    std::string fault;
    double a = 1.0, lo = 0.05, hi = 6.0, xmax = 3.0, ymax = 3.0;
    double z0_re = 0.0, z0_im = 0.4, eps = 0.03;
    std::vector<double> radii;
    std::optional<double> tol;

    auto add_shared = [&](CLI::App* cmd, bool with_params) {
        if (with_params) {
            cmd->add_option("--n", n, "kept quaternion dimension N")->check(CLI::PositiveNumber);
            cmd->add_option("--m", m, "removed quaternion rows/columns M")->check(CLI::PositiveNumber);
        }
        cmd->add_option("--seed", seed, "RNG seed (RMT_SEED env overrides)");
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--threads", threads, "worker cap (0 = hardware)");
    };

    CLI::App* c_sample = app.add_subcommand("sample", "draw spectra, write sample,re,im CSV");
    add_shared(c_sample, true);
    c_sample->add_option("--samples", samples, "number of draws")->check(CLI::PositiveNumber);

    CLI::App* c_density = app.add_subcommand("density", "density surfaces and MC comparison");
    add_shared(c_density, true);
    c_density->add_option("--mode", mode, "exact | mc | strong | weak | edge")
        ->check(CLI::IsMember({"exact", "mc", "strong", "weak", "edge"}));
    c_density->add_option("--samples", samples, "MC draws (mc mode)");
    c_density->add_option("--a", a, "strong-regime ratio a = M/N");
    c_density->add_option("--grid", grid, "grid resolution per axis");
    c_density->add_option("--qmin", lo, "weak mode: lower q");
    c_density->add_option("--qmax", hi, "weak mode: upper q");
    c_density->add_option("--points", points, "weak mode: sample count");
    c_density->add_option("--xmax", xmax, "edge mode: x range");
    c_density->add_option("--ymax", ymax, "edge mode: |y| range");
    bool raw = false;
    PairPoint pair;
    c_density->add_flag("--raw", raw, "exact mode: emit re,im,R1 (unnormalised)");
    c_density->add_option("--pair-re", pair.re, "exact mode: fixed z1 for an R2 grid, real part");
    CLI::Option* pair_im =
        c_density->add_option("--pair-im", pair.im, "exact mode: fixed z1, imaginary part");

    CLI::App* c_corr = app.add_subcommand("corr", "pair-correlation experiment around z0");
    add_shared(c_corr, true);
    c_corr->add_option("--samples", samples, "MC draws")->check(CLI::PositiveNumber);
    c_corr->add_option("--z0-re", z0_re, "reference point, real part");
    c_corr->add_option("--z0-im", z0_im, "reference point, imaginary part");
    c_corr->add_option("--eps", eps, "reference disk radius");
    c_corr->add_option("--radii", radii, "annulus edges (increasing)")->expected(-2);

    CLI::App* c_asympt =
        app.add_subcommand("asympt", "asymptotic-law sweeps, CSV param,value,oracle,abs_err");
    add_shared(c_asympt, true);
    c_asympt->add_option("--what", what, "h | weak | f | spangle | decay");
    c_asympt->add_option("--lo", lo, "sweep start");
    c_asympt->add_option("--hi", hi, "sweep end");
    c_asympt->add_option("--points", points, "sweep points");

    CLI::App* c_verify = app.add_subcommand("verify", "run self-check suites, JSON report");
    add_shared(c_verify, false);
    c_verify->add_option("suite", suite, "all | kernels | sampler | asymptotics")
        ->check(CLI::IsMember({"all", "kernels", "sampler", "asymptotics"}));
    c_verify->add_option("--tol", tol, "loosen suite tolerances to at least this value");
    c_verify->add_option("--inject-fault", fault,
                         "testing aid: none | ladder-off-by-one (must fail the kernel suite)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        const OutputTarget out{out_path};
        const std::uint64_t eff_seed = effective_seed(seed);
        if (c_sample->parsed()) return run_sample(n, m, samples, eff_seed, out);
        if (c_density->parsed()) {
            pair.active = pair_im->count() > 0;
            return run_density(mode, n, m, a, samples, eff_seed, grid, lo, hi, points, xmax, ymax,
                               raw, pair, out, format, threads);
        }
        if (c_corr->parsed()) {
            if (radii.empty()) radii = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
            return run_corr(n, m, samples, eff_seed, z0_re, z0_im, eps, radii, out, format,
                            threads);
        }
        if (c_asympt->parsed()) return run_asympt(what, n, m, lo, hi, points, out);
        if (c_verify->parsed()) return run_verify(suite, tol, fault, out, threads);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
