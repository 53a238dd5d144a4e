#include <doctest.h>

#include <cmath>
#include <numbers>

#include "truncsp/quadrature.hpp"
#include "truncsp/quaternion.hpp"
#include "truncsp/special.hpp"

using namespace truncsp;

TEST_CASE("log_beta anchors") {
    CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_beta(0.5, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(log_beta(2.0, 2.0) == doctest::Approx(std::log(1.0 / 6.0)).epsilon(1e-13));
    CHECK_THROWS_AS(log_beta(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(log_beta(1.0, -2.0), std::domain_error);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const QuadRule& r = gauss_legendre_01(4);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * std::pow(r.nodes[i], 7.0);  // degree 7 <= 2*4-1
    CHECK(acc == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("incomplete-gamma-type integral") {
    // int_0^1 t e^{-ct} dt = (1 - e^{-c}(1+c))/c^2
    const double c = 4.0;
    CHECK(int_t_pow_exp(1, c) ==
          doctest::Approx((1.0 - std::exp(-c) * (1.0 + c)) / (c * c)).epsilon(1e-14));
    // complex argument: c = 0 edge gives 1/(k+1)
    CHECK(std::abs(int_t_pow_exp(3, Complex(0.0, 0.0)) - 0.25) <= 1e-14);
    // small |c| has no cancellation blowup
    CHECK(std::abs(int_t_pow_exp(2, Complex(1e-9, 0.0)) - 1.0 / 3.0) <= 1e-9);
}

TEST_CASE("disk integral of 1 is pi") {
    const double v = disk_integral([](Complex) { return 1.0; }, 16, 32);
    CHECK(v == doctest::Approx(std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("region quadratures reproduce closed forms") {
    // int over the disk of x^2 y^2 = pi/24
    const double disk = disk_integral([](Complex z) {
        return z.real() * z.real() * z.imag() * z.imag();
    }, 16, 32);
    CHECK(disk == doctest::Approx(std::numbers::pi / 24.0).epsilon(1e-13));

    // int over a polar box of |z|^2 = (p1-p0)(r1^4 - r0^4)/4
    const double sector =
        polar_box_integral([](Complex z) { return std::norm(z); }, 0.2, 0.7, 0.5, 2.0, 8, 8);
    CHECK(sector == doctest::Approx(1.5 * (std::pow(0.7, 4) - std::pow(0.2, 4)) / 4.0)
                        .epsilon(1e-13));

    // int over a rectangle of x y^2
    const double rect =
        box_integral([](Complex z) { return z.real() * z.imag() * z.imag(); }, 0.0, 2.0, -1.0,
                     3.0, 4, 4);
    CHECK(rect == doctest::Approx(2.0 * (27.0 + 1.0) / 3.0).epsilon(1e-13));
}
