#pragma once

// Self-check suites behind the `verify` subcommand. Each check reports
// {name, params, value, oracle, abs_err, rel_err, pass}.

#include <optional>
#include <string>
#include <vector>

namespace truncsp {

struct CheckResult {
    std::string name;
    std::string params;
    double value{0.0};
    double oracle{0.0};
    double abs_err{0.0};
    double rel_err{0.0};
    bool pass{false};
};

enum class InjectedFault { None, LadderOffByOne };

struct VerifyOptions {
    // when set, loosens every tolerance in the selected suite to at least this
    std::optional<double> tol_override;
    InjectedFault fault{InjectedFault::None};
    int threads{0};
};

std::vector<CheckResult> verify_kernels(const VerifyOptions& opts);
std::vector<CheckResult> verify_sampler(const VerifyOptions& opts);
std::vector<CheckResult> verify_asymptotics(const VerifyOptions& opts);
std::vector<CheckResult> verify_all(const VerifyOptions& opts);

}  // namespace truncsp
