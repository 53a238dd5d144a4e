#pragma once

// Limiting laws: strong non-unitarity (bulk density, Ginibre correlations,
// contour-integral pre-kernel, annulus decay rate), weak non-unitarity
// (radial law, angular correlations, real-edge density) and the Sp(2N)
// reference densities.

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "truncsp/quaternion.hpp"

namespace truncsp {

struct ContourError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// limiting spectral density in the strong regime M = aN: a / (pi (1-|z|^2)^2)
// inside |z|^2 < 1/(1+a) off the real line, zero outside. The boundary
// circle |z|^2 = 1/(1+a) returns the inside value.
double density_strong(double a, Complex z);

// exponential decay rate of R_1 in the annulus 1/(1+a) < x = |z|^2 < 1:
// r(x) = log[x (1-x)^a (1+a)^{1+a} / a^a]; zero at x = 1/(1+a), negative and
// decreasing beyond.
double decay_rate(double a, double x);

// bulk pre-kernel asymptotics: M / (pi (u - v)) * (1 - uv)^{-(2M+1)},
// evaluated in log space.
Complex prekernel_strong_bulk(int m_removed, Complex u, Complex v);

// contour-integral representation of the extended pre-kernel over |w| = radius
// (counterclockwise trapezoid, principal square root; radius < 1).
Complex prekernel_contour(int m_removed, Complex u, Complex v, double radius = 0.4,
                          int nodes = 512);

// det[exp(2 pi (s_k conj(s_l) - |s_k|^2/2 - |s_l|^2/2))]: the universal
// correlation form in the unfolded complex bulk.
double ginibre_corr_det(std::span<const Complex> ss);

// h_M(r) = ((4 pi r)^{M-1} / (M-1)!) int_0^1 t^M e^{-4 pi r t} dt.
double h_profile(int m, double r);

// scaled density of the upper-half-plane process in the weak regime:
// lim R_1^+((1 - q/N) e^{i phi}) / N^2 = (4/pi) h_{2M}(q/pi).
double weak_density_scaled(int m_removed, double q);

struct WeakPoint {
    double q;    // scaled radial deviation, q > 0
    double phi;  // scaled angular offset
};

// lim R_n^+(z_1..z_n) / N^{2n} at z_j = (1 - q_j/N) e^{i(phi_0 + phi_j/N)}:
// (4/pi)^n prod_j (4q_j)^{2M-1}/(2M-1)! det[int_0^1 t^{2M}
// e^{-2(q_k+q_l-i(phi_k-phi_l)) t} dt]. Reduces to weak_density_scaled at n=1.
double weak_corr_det(int m_removed, std::span<const WeakPoint> pts);

// leading N^3 coefficient of g_N at M = 1 near z_0 = e^{i phi_0}.
Complex weak_prekernel_m1(double q1, double q2, double phi1, double phi2, double phi0);

// leading N^{2M+1} coefficient of g_N for general fixed M.
Complex weak_prekernel_general(int m_removed, double q1, double q2, double phi1, double phi2,
                               double phi0);

// leading N^{2M+2} coefficient of g_N(1 - u/N, 1 - v/N), Re u, Re v > 0.
Complex edge_prekernel(int m_removed, Complex u, Complex v);

// microscopic density at the real edge z = 1. With scaled_by_pi = false this
// is the limit of R_1(1 - (x+iy)/N)/N^2; with scaled_by_pi = true, the
// pi-scaled surface h_{2M}(x, y) (equal to the former at (pi x, pi y)).
double edge_density(int m_removed, double x, double y, bool scaled_by_pi = false);

// eigenangle density of Sp(2N): (1/2pi)[1 - (1/N) sum_{j<=N} cos(2 j phi)].
double sp_eigenangle_density(int n, double phi);

// mean of ±sp_eigenangle_density over a bin [a, b] (closed form).
double sp_eigenangle_bin_mass(int n, double a, double b);

// microscopic eigenangle density f(theta) = (1/2pi)[1 - sin(2 pi theta)/(2 pi theta)].
double microscopic_f(double theta);

// locations of the first `count` local maxima of f at positive theta
// (golden-section refinement on unit brackets).
std::vector<double> microscopic_f_maxima(int count);

}  // namespace truncsp
