#include "truncsp/asymptotics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "truncsp/special.hpp"

namespace truncsp {

namespace {
constexpr double kPi = std::numbers::pi;

Complex pow_int(Complex base, int n) {
    Complex acc = 1.0;
    Complex b = base;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) acc *= b;
        b *= b;
    }
    return acc;
}
}  // namespace

double density_strong(double a, Complex z) {
    if (!(a > 0.0)) throw std::domain_error("density_strong: a must be positive");
    const double r2 = std::norm(z);
    if (r2 >= 1.0) throw std::domain_error("density_strong: |z| must be < 1");
    if (r2 > 1.0 / (1.0 + a)) return 0.0;
    if (z.imag() == 0.0) return 0.0;
    const double d = 1.0 - r2;
    return a / (kPi * d * d);
}

double decay_rate(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("decay_rate: a must be positive");
    // closed at the support radius, where the rate vanishes
    if (!(x >= 1.0 / (1.0 + a)) || !(x < 1.0))
        throw std::domain_error("decay_rate: x must lie in [1/(1+a), 1)");
    return std::log(x) + a * std::log1p(-x) + (1.0 + a) * std::log1p(a) - a * std::log(a);
}

Complex prekernel_strong_bulk(int m_removed, Complex u, Complex v) {
    if (m_removed < 1) throw std::invalid_argument("prekernel_strong_bulk: need M >= 1");
    if (u == v) throw std::domain_error("prekernel_strong_bulk: pole at u = v");
    const Complex log_factor = -(2.0 * m_removed + 1.0) * std::log(1.0 - u * v);
    return static_cast<double>(m_removed) / (kPi * (u - v)) * std::exp(log_factor);
}

Complex prekernel_contour(int m_removed, Complex u, Complex v, double radius, int nodes) {
    if (m_removed < 1) throw std::invalid_argument("prekernel_contour: need M >= 1");
    if (nodes < 64) throw std::invalid_argument("prekernel_contour: need at least 64 nodes");
    if (!(radius > 0.0) || !(radius < 1.0))
        throw std::invalid_argument("prekernel_contour: radius must lie in (0, 1)");
    const double mod2 = std::max(std::norm(u), std::norm(v));
    if (!(mod2 * (1.0 + radius) < 1.0))
        throw std::domain_error("prekernel_contour: require max(|u|,|v|)^2 (1 + radius) < 1");
    if (u == v) return 0.0;

    // geometric-series poles of the integrand; all lie outside |w| = radius
    // when the admissibility bound above holds, but warn on near contact
    const Complex uv = u * v;
    const Complex poles[3] = {-1.0 + 1.0 / (uv * uv), -1.0 + 1.0 / (u * u), -1.0 + 1.0 / (v * v)};
    for (const Complex& p : poles) {
        if (std::abs(std::abs(p) - radius) < 0.05 * radius)
            throw ContourError("prekernel_contour: integrand pole close to the contour; use a smaller radius");
    }

    const int m = m_removed;
    Complex acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * kPi * j / nodes;
        const Complex w = std::polar(radius, th);
        const Complex opw = 1.0 + w;
        // radius < 1 keeps Re(1+w) > 0, so the principal square root applies
        const Complex num = pow_int(opw, m) * std::sqrt(opw) * (v - u) * (1.0 + uv * opw);
        const Complex den = pow_int(w, m + 1) * pow_int(1.0 - uv * uv * opw, m + 1) *
                            (1.0 - v * v * opw) * (1.0 - u * u * opw);
        acc += num / den * w;
    }
    acc /= static_cast<double>(nodes);  // (1/(2 pi i)) contour integral
    const double pref = static_cast<double>(m) * m * std::exp(log_beta(0.5, m)) / kPi;
    return pref * acc;
}

double ginibre_corr_det(std::span<const Complex> ss) {
    const int n = static_cast<int>(ss.size());
    if (n < 1) throw std::invalid_argument("ginibre_corr_det: need at least one point");
    ComplexMat m(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const Complex e =
                2.0 * kPi * (ss[k] * std::conj(ss[l]) - 0.5 * std::norm(ss[k]) - 0.5 * std::norm(ss[l]));
            m(k, l) = std::exp(e);
        }
    const Complex det = m.determinant();
    return det.real();
}

double h_profile(int m, double r) {
    if (m < 1) throw std::invalid_argument("h_profile: need M >= 1");
    if (r < 0.0) throw std::domain_error("h_profile: r must be nonnegative");
    if (r == 0.0) return m == 1 ? 0.5 : 0.0;  // integrand limit
    const double c = 4.0 * kPi * r;
    const double log_pref = (m - 1) * std::log(c) - log_factorial(m - 1);
    return std::exp(log_pref) * int_t_pow_exp(m, c);
}

double weak_density_scaled(int m_removed, double q) {
    if (m_removed < 1) throw std::invalid_argument("weak_density_scaled: need M >= 1");
    if (!(q > 0.0)) throw std::domain_error("weak_density_scaled: q must be positive");
    const int m2 = 2 * m_removed;
    const double log_pref = (m2 - 1) * std::log(4.0 * q) - log_factorial(m2 - 1);
    return 4.0 / kPi * std::exp(log_pref) * int_t_pow_exp(m2, 4.0 * q);
}

double weak_corr_det(int m_removed, std::span<const WeakPoint> pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 1) throw std::invalid_argument("weak_corr_det: need at least one point");
    const int m2 = 2 * m_removed;
    double log_pref = n * std::log(4.0 / kPi);
    for (const WeakPoint& p : pts) {
        if (!(p.q > 0.0)) throw std::domain_error("weak_corr_det: all q must be positive");
        log_pref += (m2 - 1) * std::log(4.0 * p.q) - log_factorial(m2 - 1);
    }
    ComplexMat g(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const Complex c(2.0 * (pts[k].q + pts[l].q), -2.0 * (pts[k].phi - pts[l].phi));
            g(k, l) = int_t_pow_exp(m2, c);
        }
    const Complex det = g.determinant();
    return std::exp(log_pref) * det.real();
}

Complex weak_prekernel_m1(double q1, double q2, double phi1, double phi2, double phi0) {
    if (!(q1 > 0.0) || !(q2 > 0.0)) throw std::domain_error("weak_prekernel_m1: q must be positive");
    if (!(phi0 > 0.0) || !(phi0 < kPi))
        throw std::domain_error("weak_prekernel_m1: phi0 must lie in (0, pi)");
    const Complex t(q1 + q2, -(phi1 + phi2));
    const Complex denom = kPi * t * t * t * (std::polar(1.0, phi0) - std::polar(1.0, -phi0));
    return (1.0 - std::exp(-2.0 * t) * (1.0 + 2.0 * t + 2.0 * t * t)) / denom;
}

Complex weak_prekernel_general(int m_removed, double q1, double q2, double phi1, double phi2,
                               double phi0) {
    if (m_removed < 1) throw std::invalid_argument("weak_prekernel_general: need M >= 1");
    if (!(q1 > 0.0) || !(q2 > 0.0))
        throw std::domain_error("weak_prekernel_general: q must be positive");
    if (!(phi0 > 0.0) || !(phi0 < kPi))
        throw std::domain_error("weak_prekernel_general: phi0 must lie in (0, pi)");
    const int m2 = 2 * m_removed;
    const Complex c(2.0 * (q1 + q2), -2.0 * (phi1 + phi2));
    const Complex pref = std::pow(2.0, m2) /
                         (kPi * std::tgamma(static_cast<double>(m2 - 1) + 1.0) *
                          (std::polar(1.0, phi0) - std::polar(1.0, -phi0)));
    return pref * int_t_pow_exp(m2, c);
}

Complex edge_prekernel(int m_removed, Complex u, Complex v) {
    if (m_removed < 1) throw std::invalid_argument("edge_prekernel: need M >= 1");
    if (!(u.real() > 0.0) || !(v.real() > 0.0))
        throw std::domain_error("edge_prekernel: need Re u > 0 and Re v > 0");
    if (u == v) return 0.0;
    const int m = m_removed;
    const QuadRule& rule = gauss_legendre_01(64);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = rule.nodes[i];
        const double s_pow = std::pow(s, 2 * m + 1);
        Complex inner = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double t = rule.nodes[j];
            inner += rule.weights[j] * std::pow(t, m) *
                     (std::exp(2.0 * s * (1.0 - t) * u) - std::exp(2.0 * s * (1.0 - t) * v));
        }
        acc += rule.weights[i] * s_pow * std::exp(-2.0 * s * (u + v)) * inner;
    }
    const double pref = std::pow(2.0, 2 * m - 1) / (kPi * std::tgamma(2.0 * m));
    return pref * acc;
}

double edge_density(int m_removed, double x, double y, bool scaled_by_pi) {
    if (m_removed < 1) throw std::invalid_argument("edge_density: need M >= 1");
    if (!(x > 0.0)) throw std::domain_error("edge_density: x must be positive");
    const int m = m_removed;
    const double scale = scaled_by_pi ? kPi : 1.0;
    const QuadRule& rule = gauss_legendre_01(64);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = rule.nodes[i];
        const double s_pow = std::pow(s, 2 * m + 1);
        double inner = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double t = rule.nodes[j];
            inner += rule.weights[j] * std::pow(t, m) * std::exp(-2.0 * scale * s * (1.0 + t) * x) *
                     std::sin(2.0 * scale * s * (1.0 - t) * y);
        }
        acc += rule.weights[i] * s_pow * inner;
    }
    double pref = std::pow(2.0, 4 * m) * y * std::pow(x, 2 * m - 1) / (kPi * std::tgamma(2.0 * m));
    if (scaled_by_pi) pref *= std::pow(kPi, 2 * m);  // pi^{2M-1} over Gamma, times pi from 1/pi
    return pref * acc;
}

double sp_eigenangle_density(int n, double phi) {
    if (n < 1) throw std::invalid_argument("sp_eigenangle_density: need N >= 1");
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += std::cos(2.0 * j * phi);
    return (1.0 - s / n) / (2.0 * kPi);
}

double sp_eigenangle_bin_mass(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("sp_eigenangle_bin_mass: need N >= 1");
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += (std::sin(2.0 * j * b) - std::sin(2.0 * j * a)) / (2.0 * j);
    return ((b - a) - s / n) / (2.0 * kPi);
}

double microscopic_f(double theta) {
    const double x = 2.0 * kPi * theta;
    double sinc;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        sinc = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    } else {
        sinc = std::sin(x) / x;
    }
    return (1.0 - sinc) / (2.0 * kPi);
}

std::vector<double> microscopic_f_maxima(int count) {
    if (count < 1) throw std::invalid_argument("microscopic_f_maxima: need count >= 1");
    std::vector<double> out;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int j = 0; j < count; ++j) {
        // maxima sit between the minima at roughly j + 1/4; unit brackets
        double lo = j + 0.5, hi = j + 1.0;
        double c = hi - gr * (hi - lo);
        double d = lo + gr * (hi - lo);
        double fc = microscopic_f(c), fd = microscopic_f(d);
        while (hi - lo > 1e-12) {
            if (fc > fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - gr * (hi - lo);
                fc = microscopic_f(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + gr * (hi - lo);
                fd = microscopic_f(d);
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

}  // namespace truncsp
