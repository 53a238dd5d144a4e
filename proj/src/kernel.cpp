#include "truncsp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "truncsp/special.hpp"

namespace truncsp {

namespace {

constexpr double kPi = std::numbers::pi;

struct KahanSum {
    Complex sum{0.0, 0.0};
    Complex comp{0.0, 0.0};

    void add(Complex term) {
        const Complex y = term - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// residue guard for values that are real up to roundoff
double take_real(Complex v, const char* what) {
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
        throw std::runtime_error(std::string(what) + ": imaginary residue above tolerance");
    return v.real();
}

}  // namespace

KernelContext::KernelContext(int n_keep, int m_removed) : n_(n_keep), m_(m_removed) {
    if (n_keep < 1 || m_removed < 1)
        throw std::invalid_argument("KernelContext: need N >= 1 and M >= 1");
    const double m = static_cast<double>(m_removed);
    log_b_half_ = log_beta(0.5, m);
    log_b_even_.resize(n_);
    log_b_odd_.resize(n_);
    log_b_even_[0] = log_beta(1.0, m);    // B(1, M) = 1/M
    log_b_odd_[0] = log_beta(1.5, m);
    for (int i = 1; i < n_; ++i) {
        // B(i+1, M) = B(i, M) * i / (i + M)
        log_b_even_[i] = log_b_even_[i - 1] + std::log(i / (i + m));
        // B(k+3/2, M) = B(k+1/2, M) * (k+1/2) / (k+1/2+M)
        log_b_odd_[i] = log_b_odd_[i - 1] + std::log((i + 0.5) / (i + 0.5 + m));
    }
    max_log_coeff_ = log_b_half_ - log_b_even_[n_ - 1] - log_b_odd_[n_ - 1];
    if (max_log_coeff_ > 700.0)
        throw std::domain_error("KernelContext: coefficient ladder exceeds double range for this (N, M)");
    coeff_.resize(static_cast<std::size_t>(n_) * (n_ + 1) / 2);
    std::size_t idx = 0;
    for (int k = 0; k < n_; ++k)
        for (int i = 0; i <= k; ++i)
            coeff_[idx++] = std::exp(log_b_half_ - log_b_even_[i] - log_b_odd_[k]);
}

void KernelContext::debug_shift_ladder() {
    if (coeff_.size() > 1) std::rotate(coeff_.begin(), coeff_.begin() + 1, coeff_.end());
}

std::vector<double> sop_coeffs(int index, int m_removed) {
    if (index < 0) throw std::invalid_argument("sop_coeffs: negative index");
    const double m = m_removed;
    std::vector<double> c(index + 1, 0.0);
    if (index % 2 == 1) {
        c[index] = 1.0;
        return c;
    }
    // q_{2k}(z) = sum_i [prod_{j=i+1..k} j/(j+M)] z^{2i}
    //           = sum_i [B(k+1, M)/B(i+1, M)] z^{2i}
    const int k = index / 2;
    const double log_bk = log_beta(k + 1.0, m);
    for (int i = 0; i <= k; ++i) c[2 * i] = std::exp(log_bk - log_beta(i + 1.0, m));
    return c;
}

Complex sop_eval(int index, const KernelContext& ctx, Complex z) {
    if (index < 0 || index > 2 * ctx.n() - 1)
        throw std::invalid_argument("sop_eval: index out of range");
    const std::vector<double> c = sop_coeffs(index, ctx.m());
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double skew_product_mono(int k, int m, int m_removed) {
    if (k < 0 || m < 0) throw std::invalid_argument("skew_product_mono: negative index");
    if (m != 1) return 0.0;
    return -2.0 * kPi * std::exp(log_beta(k + 2.0, 2.0 * m_removed));
}

double skew_product_quad(std::span<const double> f, std::span<const double> g, int m_removed,
                         int nodes) {
    if (nodes < 32) throw std::invalid_argument("skew_product_quad: need at least 32 radial nodes");
    const auto horner = [](std::span<const double> c, Complex z) {
        Complex acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    const int deg = static_cast<int>(f.size() + g.size());
    const int n_theta = std::max(64, 2 * (deg + 2));
    const QuadRule& rule = gauss_legendre_01(nodes);
    const double dphi = 2.0 * kPi / n_theta;
    KahanSum total;
    for (int i = 0; i < nodes; ++i) {
        const double u = rule.nodes[i];
        const double r = std::sqrt(u);
        const double w2 = std::pow(1.0 - u, 2 * m_removed - 1);
        Complex ring = 0.0;
        for (int j = 0; j < n_theta; ++j) {
            const Complex z = std::polar(r, j * dphi);
            const Complex zc = std::conj(z);
            ring += (z - zc) * (horner(f, z) * horner(g, zc) - horner(g, z) * horner(f, zc));
        }
        total.add(rule.weights[i] * 0.5 * w2 * ring * dphi);
    }
    return take_real(total.sum, "skew_product_quad");
}

Complex prekernel_gN(const KernelContext& ctx, Complex z, Complex w) {
    const int n = ctx.n();
    const Complex z2 = z * z, w2 = w * w;
    std::vector<Complex> z_even(n), z_odd(n), w_even(n), w_odd(n);
    z_even[0] = 1.0;
    w_even[0] = 1.0;
    z_odd[0] = z;
    w_odd[0] = w;
    for (int i = 1; i < n; ++i) {
        z_even[i] = z_even[i - 1] * z2;
        w_even[i] = w_even[i - 1] * w2;
        z_odd[i] = z_odd[i - 1] * z2;
        w_odd[i] = w_odd[i - 1] * w2;
    }
    const std::vector<double>& coeff = ctx.coeff();
    KahanSum acc;
    std::size_t idx = 0;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i <= k; ++i) {
            const Complex term = z_even[i] * w_odd[k] - z_odd[k] * w_even[i];
            acc.add(coeff[idx++] * term);
        }
    }
    return acc.sum / kPi;
}

Complex prekernel_g_inf(int m_removed, Complex z, Complex w, double rel_tol) {
    if (m_removed < 1) throw std::invalid_argument("prekernel_g_inf: need M >= 1");
    if (std::max(std::abs(z), std::abs(w)) >= 1.0)
        throw std::domain_error("prekernel_g_inf: requires max(|z|, |w|) < 1");
    if (z == w) return 0.0;

    const double m = static_cast<double>(m_removed);
    const double log_b_half = log_beta(0.5, m);
    const Complex z2 = z * z, w2 = w * w;

    std::vector<double> log_b_even{log_beta(1.0, m)};
    std::vector<Complex> z_even{1.0}, w_even{1.0};

    double log_b_odd = log_beta(1.5, m);
    Complex z_odd = z, w_odd = w;

    constexpr int kBlock = 16;
    constexpr int kMaxK = 20000;
    KahanSum acc;
    double block_mag = 0.0;
    for (int k = 0; k < kMaxK; ++k) {
        if (k > 0) {
            log_b_odd += std::log((k + 0.5) / (k + 0.5 + m));
            z_odd *= z2;
            w_odd *= w2;
            log_b_even.push_back(log_b_even[k - 1] + std::log(k / (k + m)));
            z_even.push_back(z_even[k - 1] * z2);
            w_even.push_back(w_even[k - 1] * w2);
        }
        KahanSum row;
        for (int i = 0; i <= k; ++i) {
            const double c = std::exp(log_b_half - log_b_even[i] - log_b_odd);
            row.add(c * (z_even[i] * w_odd - z_odd * w_even[i]));
        }
        acc.add(row.sum);
        block_mag = std::max(block_mag, std::abs(row.sum));
        if ((k + 1) % kBlock == 0) {
            if (k > 2 * kBlock && block_mag <= rel_tol * std::abs(acc.sum)) return acc.sum / kPi;
            block_mag = 0.0;
        }
    }
    throw std::runtime_error("prekernel_g_inf: series did not converge within the iteration cap");
}

double weight_sq(int m_removed, Complex z) {
    return std::pow(1.0 - std::norm(z), 2 * m_removed - 1);
}

double R1_exact(const KernelContext& ctx, Complex z) {
    if (std::abs(z) > 1.0) throw std::domain_error("R1_exact: |z| must be <= 1");
    const Complex zc = std::conj(z);
    if (z == zc) return 0.0;
    const Complex val = (z - zc) * weight_sq(ctx.m(), z) * prekernel_gN(ctx, z, zc);
    return take_real(val, "R1_exact");
}

double R2_exact(const KernelContext& ctx, Complex z1, Complex z2) {
    if (std::abs(z1) > 1.0 || std::abs(z2) > 1.0)
        throw std::domain_error("R2_exact: |z| must be <= 1");
    const double r1a = R1_exact(ctx, z1);
    const double r1b = R1_exact(ctx, z2);
    const Complex g12 = prekernel_gN(ctx, z1, z2);
    const Complex g12c = prekernel_gN(ctx, z1, std::conj(z2));
    const Complex pref =
        (z1 - std::conj(z1)) * (z2 - std::conj(z2)) * weight_sq(ctx.m(), z1) * weight_sq(ctx.m(), z2);
    const Complex val = pref * (std::norm(g12) - std::norm(g12c));
    return r1a * r1b - take_real(val, "R2_exact");
}

double Rn_exact(const KernelContext& ctx, std::span<const Complex> zs, bool half_plane_convention) {
    const int n = static_cast<int>(zs.size());
    if (n < 1) throw std::invalid_argument("Rn_exact: need at least one point");
    for (const Complex& z : zs)
        if (std::abs(z) > 1.0) throw std::domain_error("Rn_exact: |z| must be <= 1");

    // points interleaved as (z_1, z_1*, z_2, z_2*, ...)
    std::vector<Complex> pts(2 * n);
    for (int j = 0; j < n; ++j) {
        pts[2 * j] = zs[j];
        pts[2 * j + 1] = std::conj(zs[j]);
    }
    SkewSymmetricMat a(2 * n);
    for (int p = 0; p < 2 * n; ++p)
        for (int q = p + 1; q < 2 * n; ++q) a.upper(p, q) = prekernel_gN(ctx, pts[p], pts[q]);

    Complex val = pfaffian(a);
    for (int j = 0; j < n; ++j)
        val *= (zs[j] - std::conj(zs[j])) * weight_sq(ctx.m(), zs[j]);
    double out = take_real(val, "Rn_exact");
    if (half_plane_convention) out *= std::pow(2.0, n);
    return out;
}

double log_normalization(const TruncationParams& params, DiskConvention convention) {
    const int n = params.n_keep;
    const double m2 = 2.0 * params.m_removed;
    double logz = n * std::log(convention == DiskConvention::FullDisk ? 2.0 * kPi : kPi) +
                  log_factorial(n);
    for (int j = 1; j <= n; ++j) logz += log_beta(m2, 2.0 * j);
    return logz;
}

double jpdf_log(const TruncationParams& params, std::span<const Complex> lambdas,
                DiskConvention convention) {
    const int n = params.n_keep;
    if (static_cast<int>(lambdas.size()) != n)
        throw std::invalid_argument("jpdf_log: configuration size must equal n_keep");
    for (const Complex& l : lambdas)
        if (std::abs(l) >= 1.0) throw std::domain_error("jpdf_log: all |lambda| must be < 1");

    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        if (lambdas[j].imag() == 0.0) return -std::numeric_limits<double>::infinity();
        for (int i = j; i < n; ++i) acc += std::log(std::norm(lambdas[j] - std::conj(lambdas[i])));
        for (int i = j + 1; i < n; ++i) acc += std::log(std::norm(lambdas[j] - lambdas[i]));
        acc += (2.0 * params.m_removed - 1.0) * std::log1p(-std::norm(lambdas[j]));
    }
    return acc - log_normalization(params, convention);
}

}  // namespace truncsp
