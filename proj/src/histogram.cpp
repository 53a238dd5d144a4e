#include "truncsp/histogram.hpp"

#include <cmath>
#include <numbers>

namespace truncsp {

namespace {
constexpr double kPi = std::numbers::pi;

// wrap an angle into [0, 2 pi)
double wrap_angle(double phi) {
    double t = std::fmod(phi, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
}
}  // namespace

void BinningSpec::validate() const {
    const bool two = two_dimensional();
    if (n1 < 1 || (two && n2 < 1)) throw std::invalid_argument("BinningSpec: bin counts must be >= 1");
    if (!(hi1 > lo1) || (two && !(hi2 > lo2)))
        throw std::invalid_argument("BinningSpec: zero-width bin range");
}

int BinningSpec::locate(std::complex<double> z) const {
    const auto idx1d = [](double v, double lo, double hi, int n) {
        if (v < lo || v >= hi) return -1;
        int i = static_cast<int>((v - lo) / (hi - lo) * n);
        if (i >= n) i = n - 1;
        return i;
    };
    switch (kind) {
        case BinKind::Radial:
            return idx1d(std::abs(z), lo1, hi1, n1);
        case BinKind::Angular:
            return idx1d(wrap_angle(std::arg(z)), lo1, hi1, n1);
        case BinKind::Polar: {
            const int ir = idx1d(std::abs(z), lo1, hi1, n1);
            const int ip = idx1d(wrap_angle(std::arg(z)), lo2, hi2, n2);
            if (ir < 0 || ip < 0) return -1;
            return ir * n2 + ip;
        }
        case BinKind::Cartesian: {
            const int ix = idx1d(z.real(), lo1, hi1, n1);
            const int iy = idx1d(z.imag(), lo2, hi2, n2);
            if (ix < 0 || iy < 0) return -1;
            return ix * n2 + iy;
        }
    }
    return -1;
}

void BinningSpec::bin_bounds(int flat, double& a1, double& b1, double& a2, double& b2) const {
    const double w1 = (hi1 - lo1) / n1;
    if (two_dimensional()) {
        const int i = flat / n2;
        const int j = flat % n2;
        const double w2 = (hi2 - lo2) / n2;
        a1 = lo1 + i * w1;
        b1 = a1 + w1;
        a2 = lo2 + j * w2;
        b2 = a2 + w2;
    } else {
        a1 = lo1 + flat * w1;
        b1 = a1 + w1;
        a2 = 0.0;
        b2 = 0.0;
    }
}

double BinningSpec::bin_area(int flat) const {
    double a1, b1, a2, b2;
    bin_bounds(flat, a1, b1, a2, b2);
    switch (kind) {
        case BinKind::Radial:
            return kPi * (b1 * b1 - a1 * a1);
        case BinKind::Angular:
            return b1 - a1;  // arc measure
        case BinKind::Polar:
            return 0.5 * (b1 * b1 - a1 * a1) * (b2 - a2);
        case BinKind::Cartesian:
            return (b1 - a1) * (b2 - a2);
    }
    return 0.0;
}

void BinningSpec::bin_center(int flat, double& c1, double& c2) const {
    double a1, b1, a2, b2;
    bin_bounds(flat, a1, b1, a2, b2);
    c1 = 0.5 * (a1 + b1);
    c2 = 0.5 * (a2 + b2);
}

ComparisonReport compare(const Histogram& h, const std::vector<double>& expected_counts,
                         const std::vector<double>& density_scale, double var_factor,
                         double pass_fraction) {
    h.spec.validate();
    const std::size_t nb = h.counts.size();
    if (expected_counts.size() != nb || density_scale.size() != nb)
        throw std::invalid_argument("compare: per-bin vector sizes disagree with the binning");

    ComparisonReport rep;
    rep.per_bin.resize(nb);
    int occupied = 0, within = 0, used_chi2 = 0;
    double chi2 = 0.0, sup_z = 0.0;
    bool diverged_any = false;
    for (std::size_t b = 0; b < nb; ++b) {
        BinStat& s = rep.per_bin[b];
        h.spec.bin_center(static_cast<int>(b), s.center1, s.center2);
        s.count = h.counts[b];
        s.expected = expected_counts[b];
        const double scale = density_scale[b];
        s.empirical = scale > 0.0 ? s.count / scale : 0.0;
        s.stderr_density = scale > 0.0 ? std::sqrt(std::max<double>(s.count, 1.0)) / scale : 0.0;
        s.oracle = scale > 0.0 ? s.expected / scale : 0.0;
        if (s.expected > 0.0) {
            s.zscore = (s.count - s.expected) / std::sqrt(var_factor * s.expected);
            chi2 += s.zscore * s.zscore;
            ++used_chi2;
        } else if (s.count > 0) {
            s.diverged = true;
            diverged_any = true;
        }
        if (s.count > 0) {
            ++occupied;
            if (!s.diverged && std::abs(s.zscore) <= 3.0) ++within;
        }
        sup_z = std::max(sup_z, std::abs(s.zscore));
    }
    rep.summary.sup_abs_z = sup_z;
    rep.summary.chi2 = chi2;
    rep.summary.dof = used_chi2;
    rep.summary.frac_within_3sigma = occupied > 0 ? static_cast<double>(within) / occupied : 1.0;
    rep.summary.pass = !diverged_any && rep.summary.frac_within_3sigma >= pass_fraction;
    return rep;
}

}  // namespace truncsp
