#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lamelab/radial_quadrature.hpp"

using namespace lamelab;
using std::numbers::pi;

namespace {
std::vector<double> gaussian_values(const Grid& g) {
    std::vector<double> v(g.size());
    for_each_node(g, [&](std::size_t i, const Point& x) {
        double r2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) r2 += x[a] * x[a];
        v[i] = std::exp(-r2);
    });
    return v;
}
}  // namespace

TEST_CASE("singular power integrals of a Gaussian in three dimensions") {
    const Grid g = make_grid(3, 64, 8.0);
    const auto v = gaussian_values(g);
    // 4 pi int r^{2+alpha} e^{-r^2} dr = 2 pi Gamma((3+alpha)/2)
    for (double alpha : {-2.0, -1.0, 1.0, -0.5, 3.0}) {
        const double exact = 2.0 * pi * std::tgamma((3.0 + alpha) / 2.0);
        CHECK(integrate_power(g, v, alpha) == doctest::Approx(exact).epsilon(1e-11));
    }
}

TEST_CASE("singular power integrals in one and two dimensions") {
    const Grid g2 = make_grid(2, 64, 8.0);
    CHECK(integrate_power(g2, gaussian_values(g2), -1.0) == doctest::Approx(std::pow(pi, 1.5)).epsilon(1e-11));
    const Grid g1 = make_grid(1, 64, 8.0);
    // int |x|^{-1/2} e^{-x^2} dx = Gamma(1/4)
    CHECK(integrate_power(g1, gaussian_values(g1), -0.5) == doctest::Approx(std::tgamma(0.25)).epsilon(1e-11));
}

TEST_CASE("even powers use the nodal rule") {
    const Grid g = make_grid(2, 16, 4.0);
    const auto w = power_weights(g, 2.0);
    const double h2 = g.spacing() * g.spacing();
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs((*w)[i] - h2 * g.radius(i) * g.radius(i)));
    CHECK(err < 1e-14);
}

TEST_CASE("weights are cached") {
    const Grid g = make_grid(2, 16, 4.0);
    CHECK(power_weights(g, -1.0).get() == power_weights(g, -1.0).get());
}

TEST_CASE("cutoff transform at zero frequency") {
    // 4 pi int_0^inf exp(-(r/a)^8) r dr with a = 0.75 L, for d = 3, alpha = -1
    const double L = 2.0;
    const double a = 0.75 * L;
    const double radial = a * a * std::tgamma(2.0 / 8.0) / 8.0;
    CHECK(cutoff_power_transform(3, L, -1.0, 0.0) == doctest::Approx(4.0 * pi * radial).epsilon(1e-10));
}

TEST_CASE("power below -d is rejected") {
    const Grid g = make_grid(2, 8, 1.0);
    CHECK_THROWS_AS(power_weights(g, -2.0), Error);
}
