#pragma once

// Disk and box quadratures. Radial integrals substitute u = r^2 so the
// (1 - r^2)^{2M-1} edge factor is polynomial in the radial variable.

#include <complex>
#include <functional>

#include "truncsp/special.hpp"

namespace truncsp {

using RealFieldFn = std::function<double(std::complex<double>)>;

// integral over the unit disk of f(z) d^2 z; Gauss-Legendre in u = r^2,
// uniform trapezoid in angle.
double disk_integral(const RealFieldFn& f, int radial_nodes = 128, int angular_nodes = 256);

// integral over the polar box r in [r0,r1], phi in [p0,p1] of f d^2 z.
double polar_box_integral(const RealFieldFn& f, double r0, double r1, double p0, double p1,
                          int radial_nodes = 8, int angular_nodes = 8);

// integral over [x0,x1] x [y0,y1] of f(x + iy) dx dy.
double box_integral(const RealFieldFn& f, double x0, double x1, double y0, double y1,
                    int nx = 8, int ny = 8);

}  // namespace truncsp
