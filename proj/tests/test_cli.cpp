// End-to-end checks of the command-line tool; spawns the built binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef TRUNCSP_CLI_PATH
#error "TRUNCSP_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args, const std::string& env = "") {
    const std::string tmp = "/tmp/truncsp_cli_out.txt";
    const std::string cmd = env + " " + std::string(TRUNCSP_CLI_PATH) + " " + args + " > " + tmp +
                            " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("sample subcommand writes N rows per draw and is reproducible") {
    const RunResult r1 = run("sample --n 4 --m 2 --samples 1000 --seed 7 --out /tmp/ev1.csv");
    CHECK(r1.exit_code == 0);
    const std::string f1 = slurp("/tmp/ev1.csv");
    CHECK(count_lines(f1) == 4001);  // header + 4 * 1000
    CHECK(f1.rfind("sample,re,im", 0) == 0);

    const RunResult r2 = run("sample --n 4 --m 2 --samples 1000 --seed 7 --out /tmp/ev2.csv");
    CHECK(r2.exit_code == 0);
    CHECK(f1 == slurp("/tmp/ev2.csv"));
}

TEST_CASE("usage errors exit with code 1 and name the flag") {
    const RunResult r = run("sample --n 0 --m 2 --samples 10");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("--n") != std::string::npos);

    const RunResult unknown = run("sample --bogus 3");
    CHECK(unknown.exit_code == 1);
}

TEST_CASE("unwritable output path exits with code 2") {
    const RunResult r = run("sample --n 2 --m 1 --samples 2 --seed 1 --out /nonexistent/dir/x.csv");
    CHECK(r.exit_code == 2);
}

TEST_CASE("RMT_SEED environment variable overrides --seed") {
    const RunResult a = run("sample --n 2 --m 1 --samples 5 --seed 1 --out /tmp/ev_env1.csv",
                            "RMT_SEED=99");
    CHECK(a.exit_code == 0);
    const RunResult b = run("sample --n 2 --m 1 --samples 5 --seed 99 --out /tmp/ev_env2.csv");
    CHECK(b.exit_code == 0);
    CHECK(slurp("/tmp/ev_env1.csv") == slurp("/tmp/ev_env2.csv"));
    const RunResult c = run("sample --n 2 --m 1 --samples 5 --seed 1 --out /tmp/ev_env3.csv");
    CHECK(slurp("/tmp/ev_env1.csv") != slurp("/tmp/ev_env3.csv"));
}

TEST_CASE("density surfaces") {
    const RunResult exact = run("density --mode exact --n 3 --m 2 --grid 16 --out /tmp/d_exact.csv");
    CHECK(exact.exit_code == 0);
    const std::string body = slurp("/tmp/d_exact.csv");
    CHECK(body.rfind("x,y,density", 0) == 0);
    CHECK(count_lines(body) > 100);

    const RunResult weak = run("density --mode weak --m 1 --qmin 0.1 --qmax 4 --points 32 --out /tmp/d_weak.csv");
    CHECK(weak.exit_code == 0);
    CHECK(slurp("/tmp/d_weak.csv").rfind("r,density", 0) == 0);

    const RunResult strong = run("density --mode strong --a 1 --grid 12 --out /tmp/d_strong.csv");
    CHECK(strong.exit_code == 0);

    const RunResult edge = run("density --mode edge --m 1 --grid 10 --out /tmp/d_edge.csv");
    CHECK(edge.exit_code == 0);

    const RunResult mc = run(
        "density --mode mc --n 2 --m 1 --samples 4000 --seed 5 --format json --out /tmp/d_mc.json");
    CHECK(mc.exit_code == 0);
    const std::string j = slurp("/tmp/d_mc.json");
    CHECK(j.find("\"summary\"") != std::string::npos);
    CHECK(j.find("\"pass\"") != std::string::npos);
}

TEST_CASE("exact density surfaces have the documented structure") {
    // strongly non-unitary: finite everywhere, zero on the real axis
    const RunResult strong =
        run("density --mode exact --n 60 --m 60 --grid 101 --out /tmp/fig_strong.csv");
    CHECK(strong.exit_code == 0);
    std::istringstream is(slurp("/tmp/fig_strong.csv"));
    std::string line;
    std::getline(is, line);
    double max_onaxis = 0.0;
    bool all_finite = true;
    while (std::getline(is, line)) {
        const auto c1 = line.find(','), c2 = line.rfind(',');
        const double y = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double d = std::stod(line.substr(c2 + 1));
        all_finite = all_finite && std::isfinite(d);
        if (y == 0.0) max_onaxis = std::max(max_onaxis, std::abs(d));
    }
    CHECK(all_finite);
    CHECK(max_onaxis == 0.0);  // odd grid puts rows exactly on the axis

    // weakly non-unitary: the density ridge hugs the unit circle
    const RunResult weak =
        run("density --mode exact --n 60 --m 1 --grid 101 --out /tmp/fig_weak.csv");
    CHECK(weak.exit_code == 0);
    std::istringstream is2(slurp("/tmp/fig_weak.csv"));
    std::getline(is2, line);
    double best = -1.0, best_r = 0.0;
    while (std::getline(is2, line)) {
        const auto c1 = line.find(','), c2 = line.rfind(',');
        const double x = std::stod(line.substr(0, c1));
        const double y = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double d = std::stod(line.substr(c2 + 1));
        if (d > best) {
            best = d;
            best_r = std::hypot(x, y);
        }
    }
    CHECK(best_r > 0.9);
}

TEST_CASE("weak-mode curves are unimodal for M = 1..4") {
    for (int m = 1; m <= 4; ++m) {
        const RunResult r = run("density --mode weak --m " + std::to_string(m) +
                                " --qmin 0.05 --qmax 8 --points 160 --out /tmp/fig2.csv");
        CHECK(r.exit_code == 0);
        std::istringstream is(slurp("/tmp/fig2.csv"));
        std::string line;
        std::getline(is, line);
        std::vector<double> vals;
        while (std::getline(is, line)) vals.push_back(std::stod(line.substr(line.find(',') + 1)));
        int sign_changes = 0;
        for (std::size_t i = 2; i < vals.size(); ++i) {
            const bool was_rising = vals[i - 1] > vals[i - 2];
            const bool is_rising = vals[i] > vals[i - 1];
            if (was_rising != is_rising) ++sign_changes;
        }
        CHECK(sign_changes == 1);  // one interior maximum, no other direction flips
    }
}

TEST_CASE("raw grid schemas") {
    const RunResult raw = run("density --mode exact --n 2 --m 1 --grid 11 --raw --out /tmp/raw.csv");
    CHECK(raw.exit_code == 0);
    CHECK(slurp("/tmp/raw.csv").rfind("re,im,R1", 0) == 0);

    const RunResult pair = run(
        "density --mode exact --n 2 --m 1 --grid 11 --pair-re 0 --pair-im 0.4 --out /tmp/r2.csv");
    CHECK(pair.exit_code == 0);
    CHECK(slurp("/tmp/r2.csv").rfind("re1,im1,re2,im2,R2", 0) == 0);
}

TEST_CASE("corr subcommand emits a report") {
    const RunResult r =
        run("corr --n 4 --m 2 --samples 20000 --seed 9 --z0-im 0.4 --format csv --out /tmp/corr.csv");
    CHECK(r.exit_code == 0);
    CHECK(slurp("/tmp/corr.csv").rfind("bin_center_1", 0) == 0);
}

TEST_CASE("asympt sweeps") {
    const RunResult r = run("asympt --what weak --m 2 --lo 0.2 --hi 3 --points 16 --out /tmp/a.csv");
    CHECK(r.exit_code == 0);
    const std::string body = slurp("/tmp/a.csv");
    CHECK(body.rfind("param,value,oracle,abs_err", 0) == 0);
    // the weak sweep's oracle column is the h-profile identity: abs_err ~ 0
    std::istringstream is(body);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        const double err = std::stod(line.substr(line.rfind(',') + 1));
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("verify subcommand exit codes") {
    const RunResult ok = run("verify all --out /tmp/verify.json");
    CHECK(ok.exit_code == 0);
    CHECK(slurp("/tmp/verify.json").find("check_name") != std::string::npos);

    const RunResult fault = run("verify kernels --inject-fault ladder-off-by-one");
    CHECK(fault.exit_code == 3);
    CHECK(fault.output.find("skew_orthogonality") != std::string::npos);

    // loosening the tolerance lets the injected fault pass
    const RunResult loose = run("verify kernels --inject-fault ladder-off-by-one --tol 1e19");
    CHECK(loose.exit_code == 0);

    const RunResult bad_suite = run("verify bogus");
    CHECK(bad_suite.exit_code == 1);
}
