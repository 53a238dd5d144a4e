#pragma once

// log-Beta, Gauss-Legendre rules and the small incomplete-gamma-type
// integrals shared by the kernel and asymptotics layers.

#include <complex>
#include <stdexcept>
#include <vector>

namespace truncsp {

// log Gamma(p) + log Gamma(q) - log Gamma(p+q); p, q > 0.
double log_beta(double p, double q);

// Gauss-Legendre rule on [0, 1]; cached per node count, thread-safe.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const QuadRule& gauss_legendre_01(int n);

// int_0^1 t^k exp(-c t) dt, evaluated by fixed Gauss-Legendre quadrature
// (one code path over the whole parameter range; no recurrences).
std::complex<double> int_t_pow_exp(int k, std::complex<double> c, int nodes = 64);
double int_t_pow_exp(int k, double c, int nodes = 64);

double log_factorial(int n);

}  // namespace truncsp
