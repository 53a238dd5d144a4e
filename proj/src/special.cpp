#include "truncsp/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace truncsp {

double log_beta(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw std::domain_error("log_beta: arguments must be positive");
    return std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q);
}

double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

namespace {

// Newton iteration on P_n; standard Golub-Welsch-free construction.
QuadRule build_gauss_legendre(int n) {
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1,1] -> [0,1]
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.weights[i] = 0.5 * w;
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

}  // namespace

const QuadRule& gauss_legendre_01(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_01: need at least one node");
    static std::mutex mtx;
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

std::complex<double> int_t_pow_exp(int k, std::complex<double> c, int nodes) {
    if (k < 0) throw std::domain_error("int_t_pow_exp: negative power");
    const QuadRule& rule = gauss_legendre_01(nodes);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double t = rule.nodes[i];
        acc += rule.weights[i] * std::pow(t, k) * std::exp(-c * t);
    }
    return acc;
}

double int_t_pow_exp(int k, double c, int nodes) {
    return int_t_pow_exp(k, std::complex<double>(c, 0.0), nodes).real();
}

}  // namespace truncsp
