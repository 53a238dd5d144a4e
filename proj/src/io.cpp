#include "truncsp/io.hpp"

#include <charconv>
#include <stdexcept>

namespace truncsp {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("parse_double: bad numeric field '" + s + "'");
    return v;
}

void write_eigenvalue_csv(std::ostream& os, const std::vector<SpectrumSample>& samples) {
    os << "sample,re,im\n";
    for (const SpectrumSample& s : samples) {
        for (const Complex& ev : s.eigenvalues) {
            os << s.seed_tag << ',' << format_double(ev.real()) << ',' << format_double(ev.imag())
               << '\n';
        }
    }
}

nlohmann::json report_to_json(const ComparisonReport& rep) {
    nlohmann::json j;
    j["name"] = rep.name;
    j["config"] = rep.params;
    auto& bins = j["per_bin"] = nlohmann::json::array();
    for (const BinStat& b : rep.per_bin) {
        bins.push_back({{"center", {b.center1, b.center2}},
                        {"count", b.count},
                        {"empirical", b.empirical},
                        {"stderr", b.stderr_density},
                        {"oracle", b.oracle},
                        {"zscore", b.zscore},
                        {"diverged", b.diverged}});
    }
    j["summary"] = {{"sup_z", rep.summary.sup_abs_z},
                    {"chi2", rep.summary.chi2},
                    {"dof", rep.summary.dof},
                    {"frac_within_3sigma", rep.summary.frac_within_3sigma},
                    {"pass", rep.summary.pass}};
    return j;
}

void write_report_csv(std::ostream& os, const ComparisonReport& rep) {
    os << "bin_center_1,bin_center_2,empirical,stderr,oracle,zscore\n";
    for (const BinStat& b : rep.per_bin) {
        os << format_double(b.center1) << ',' << format_double(b.center2) << ','
           << format_double(b.empirical) << ',' << format_double(b.stderr_density) << ','
           << format_double(b.oracle) << ',' << format_double(b.zscore) << '\n';
    }
}

}  // namespace truncsp
