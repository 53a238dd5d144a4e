#pragma once

// Exact finite-N machinery: joint eigenvalue density, skew-orthogonal
// polynomials, the pre-kernel g_N, and the correlation functions
// R_1, R_2, R_n assembled through the Pfaffian.

#include <complex>
#include <span>
#include <vector>

#include "truncsp/params.hpp"
#include "truncsp/pfaffian.hpp"

namespace truncsp {

// Precomputed log-Beta ladder for stable evaluation of g_N at fixed (N, M).
//
// The coefficient of the (i, k) term of g_N is
//   B(1/2, M) / (B(i+1, M) B(k+3/2, M)),
// carried as c_{k,i} = log B(1/2,M) - log B(i+1,M) - log B(k+3/2,M) and
// exponentiated once per context; the log tables are filled by the ratio
// recurrences B(p+1, M)/B(p, M) = p/(p+M).
class KernelContext {
public:
    KernelContext(int n_keep, int m_removed);

    int n() const { return n_; }
    int m() const { return m_; }

    double log_b_half() const { return log_b_half_; }
    // log B(i+1, M), 0 <= i < N
    const std::vector<double>& log_b_even() const { return log_b_even_; }
    // log B(k+3/2, M), 0 <= k < N
    const std::vector<double>& log_b_odd() const { return log_b_odd_; }

    // exp(c_{k,i}), packed row-major over the triangle 0 <= i <= k < N
    const std::vector<double>& coeff() const { return coeff_; }
    double max_log_coeff() const { return max_log_coeff_; }

    // Testing hook: rotates the coefficient ladder by one slot, emulating an
    // off-by-one indexing fault. Used by the verify suite's mutation check.
    void debug_shift_ladder();

private:
    int n_{0}, m_{0};
    double log_b_half_{0.0};
    std::vector<double> log_b_even_;
    std::vector<double> log_b_odd_;
    std::vector<double> coeff_;
    double max_log_coeff_{0.0};
};

// Monic skew-orthogonal polynomial coefficients (ascending, real).
// index 2k+1 -> z^{2k+1};  index 2k -> sum_i B(k+1,2M)/B(i+1,2M) z^{2i}.
std::vector<double> sop_coeffs(int index, int m_removed);

// q_index(z); 0 <= index <= 2N-1.
Complex sop_eval(int index, const KernelContext& ctx, Complex z);

// <z^{k+m}, z^k>_s = -2 pi B(k+2, 2M) for m = 1, zero otherwise.
double skew_product_mono(int k, int m, int m_removed);

// Quadrature oracle for the skew product
//   int_D (z - z*) w^2(z) [f(z) g(z*) - g(z) f(z*)] d^2 z
// with w^2 = (1-|z|^2)^{2M-1}; f, g real ascending coefficient lists.
// Gauss-Legendre in r^2 ("nodes" points), trapezoid in angle.
double skew_product_quad(std::span<const double> f, std::span<const double> g, int m_removed,
                         int nodes = 64);

// g_N(z, w): antisymmetric pre-kernel of the Pfaffian point process.
Complex prekernel_gN(const KernelContext& ctx, Complex z, Complex w);

// N -> infinity extension of g_N; requires max(|z|, |w|) < 1. The triangular
// series is extended until a block of terms falls below rel_tol relative to
// the running sum. Also equals psi(z^2, w^2) of the origin-region kernel.
Complex prekernel_g_inf(int m_removed, Complex z, Complex w, double rel_tol = 1e-14);

double weight_sq(int m_removed, Complex z);  // (1 - |z|^2)^{2M-1}

// one-point correlation function (eigenpair picture, full-disk normalisation
// int_D R_1 = N).
double R1_exact(const KernelContext& ctx, Complex z);

// two-point correlation function via the expanded quaternion determinant.
double R2_exact(const KernelContext& ctx, Complex z1, Complex z2);

// n-point correlation function via the 2n x 2n Pfaffian. With
// half_plane_convention the result is multiplied by 2^n (R_n^+ picture).
double Rn_exact(const KernelContext& ctx, std::span<const Complex> zs,
                bool half_plane_convention = false);

enum class DiskConvention {
    UpperHalfDisk,  // Z = pi^N N! prod B(2M, 2j)
    FullDisk,       // Z = (2 pi)^N N! prod B(2M, 2j)
};

// log joint eigenvalue density at a configuration of N points; -inf if any
// point is real (the density vanishes there).
double jpdf_log(const TruncationParams& params, std::span<const Complex> lambdas,
                DiskConvention convention = DiskConvention::FullDisk);

double log_normalization(const TruncationParams& params,
                         DiskConvention convention = DiskConvention::FullDisk);

}  // namespace truncsp
