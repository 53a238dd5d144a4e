#include "truncsp/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace truncsp {

double disk_integral(const RealFieldFn& f, int radial_nodes, int angular_nodes) {
    const QuadRule& rule = gauss_legendre_01(radial_nodes);
    const double dphi = 2.0 * std::numbers::pi / angular_nodes;
    double total = 0.0;
    for (int i = 0; i < radial_nodes; ++i) {
        const double u = rule.nodes[i];
        const double r = std::sqrt(u);
        double ring = 0.0;
        for (int j = 0; j < angular_nodes; ++j) {
            const double phi = j * dphi;
            ring += f(std::polar(r, phi));
        }
        // d^2 z = r dr dphi = (1/2) du dphi
        total += rule.weights[i] * 0.5 * ring * dphi;
    }
    return total;
}

double polar_box_integral(const RealFieldFn& f, double r0, double r1, double p0, double p1,
                          int radial_nodes, int angular_nodes) {
    const QuadRule& rule_r = gauss_legendre_01(radial_nodes);
    const QuadRule& rule_p = gauss_legendre_01(angular_nodes);
    const double u0 = r0 * r0, u1 = r1 * r1;
    double total = 0.0;
    for (int i = 0; i < radial_nodes; ++i) {
        const double u = u0 + (u1 - u0) * rule_r.nodes[i];
        const double r = std::sqrt(u);
        for (int j = 0; j < angular_nodes; ++j) {
            const double phi = p0 + (p1 - p0) * rule_p.nodes[j];
            total += rule_r.weights[i] * rule_p.weights[j] * f(std::polar(r, phi));
        }
    }
    return total * 0.5 * (u1 - u0) * (p1 - p0);
}

double box_integral(const RealFieldFn& f, double x0, double x1, double y0, double y1,
                    int nx, int ny) {
    const QuadRule& rx = gauss_legendre_01(nx);
    const QuadRule& ry = gauss_legendre_01(ny);
    double total = 0.0;
    for (int i = 0; i < nx; ++i) {
        const double x = x0 + (x1 - x0) * rx.nodes[i];
        for (int j = 0; j < ny; ++j) {
            const double y = y0 + (y1 - y0) * ry.nodes[j];
            total += rx.weights[i] * ry.weights[j] * f({x, y});
        }
    }
    return total * (x1 - x0) * (y1 - y0);
}

}  // namespace truncsp
