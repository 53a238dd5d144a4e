#pragma once

// Binning and empirical-vs-oracle comparison reports.

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace truncsp {

enum class BinKind { Radial, Angular, Polar, Cartesian };

// Radial: n1 bins in r over [lo1, hi1].
// Angular: n1 bins in phi over [lo1, hi1].
// Polar: n1 x n2 bins in (r, phi) over [lo1,hi1] x [lo2,hi2].
// Cartesian: n1 x n2 bins in (x, y) over [lo1,hi1] x [lo2,hi2].
struct BinningSpec {
    BinKind kind{BinKind::Radial};
    double lo1{0.0}, hi1{1.0};
    int n1{1};
    double lo2{0.0}, hi2{0.0};
    int n2{1};

    void validate() const;
    bool two_dimensional() const { return kind == BinKind::Polar || kind == BinKind::Cartesian; }
    int total_bins() const { return two_dimensional() ? n1 * n2 : n1; }

    // flat bin index of a point given in (x + iy) coordinates; -1 if outside
    int locate(std::complex<double> z) const;

    double bin_area(int flat) const;  // Lebesgue area of the bin
    void bin_bounds(int flat, double& a1, double& b1, double& a2, double& b2) const;
    void bin_center(int flat, double& c1, double& c2) const;
};

struct Histogram {
    BinningSpec spec;
    std::vector<std::int64_t> counts;

    explicit Histogram(const BinningSpec& s) : spec(s), counts(s.total_bins(), 0) {}
    void add(std::complex<double> z) {
        const int idx = spec.locate(z);
        if (idx >= 0) ++counts[static_cast<std::size_t>(idx)];
    }
    void merge(const Histogram& other) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    }
    std::int64_t total() const {
        std::int64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

struct BinStat {
    double center1{0.0}, center2{0.0};
    std::int64_t count{0};
    double empirical{0.0};     // density estimate
    double stderr_density{0.0};
    double oracle{0.0};        // oracle density
    double expected{0.0};      // expected count
    double zscore{0.0};        // Pearson residual (count - expected)/sqrt(var)
    bool diverged{false};      // count > 0 against a zero oracle
};

struct ComparisonSummary {
    double sup_abs_z{0.0};
    double chi2{0.0};
    int dof{0};
    double frac_within_3sigma{1.0};
    bool pass{false};
};

struct ComparisonReport {
    std::string name;
    std::string params;
    std::vector<BinStat> per_bin;
    ComparisonSummary summary;
};

// expected_counts: oracle expectation per bin. density_scale: divisor turning
// a count into the reported density (typically samples * mass * bin area,
// supplied per bin by the caller). var_factor: per-bin variance as a multiple
// of the expected count (2 for radial binning of the reflected picture, where
// conjugate pairs land in the same modulus bin).
ComparisonReport compare(const Histogram& h, const std::vector<double>& expected_counts,
                         const std::vector<double>& density_scale, double var_factor = 1.0,
                         double pass_fraction = 0.95);

}  // namespace truncsp
