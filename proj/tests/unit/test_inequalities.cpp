#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lamelab/catalog.hpp"
#include "lamelab/helmholtz.hpp"
#include "lamelab/inequalities.hpp"

using namespace lamelab;
using std::numbers::pi;

namespace {
ScalarField gaussian(const Grid& g) {
    return ScalarField::sample(g, [&](const Point& x) {
        double r2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) r2 += x[a] * x[a];
        return cplx(std::exp(-r2 / 2.0));
    });
}
}  // namespace

TEST_CASE("classical Hardy quotient of a Gaussian") {
    // int psi^2 / |x|^2 = 2 pi^{3/2}, int |grad psi|^2 = (3/2) pi^{3/2}
    const Grid g = make_grid(3, 32, 8.0);
    CHECK(hardy_quotient(gaussian(g), false) == doctest::Approx(4.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("weighted Hardy quotient of a Gaussian") {
    // d = 3: int psi^2 / |x| = 2 pi, int |x| |grad psi|^2 = int r^3 e^{-r^2} 4 pi r^2 dr = 4 pi
    const Grid g = make_grid(3, 32, 8.0);
    CHECK(hardy_quotient(gaussian(g), true) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("Hardy quotients stay below the sharp constants") {
    const Grid g = make_grid(3, 32, 8.0);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const ScalarField psi = sample_catalog_field("gaussian_bump", {0.6 + 0.2 * seed, 1}, g)[0];
        CHECK(hardy_quotient(psi, false) <= hardy_constant(3, false) + 1e-3);
        CHECK(hardy_quotient(psi, true) <= hardy_constant(3, true) + 1e-3);
    }
    CHECK(hardy_constant(3, false) == 4.0);
    CHECK(hardy_constant(4, true) == doctest::Approx(4.0 / 9.0));
    CHECK_THROWS_AS(hardy_quotient(ScalarField::zeros(g), false), Error);
    const Grid g2 = make_grid(2, 16, 4.0);
    CHECK_THROWS_AS(hardy_quotient(gaussian(g2), false), Error);
}

TEST_CASE("Lambda estimate") {
    const Grid g = make_grid(3, 16, 4.0);
    CHECK(estimate_lambda(make_potential("zero", {}, g)).value == 0.0);
    const Potential V = make_potential("gaussian", {0.3, 0.2, 1.0}, g);
    const ConstantEstimate a = estimate_lambda(V);
    const ConstantEstimate b = estimate_lambda(scaled(V, cplx(0.0, -2.5)));
    CHECK(a.value > 0.0);
    CHECK(b.value == doctest::Approx(2.5 * a.value).epsilon(1e-8));
    CHECK(a.method == "generalized_eig");
    CHECK(a.resolution == describe(g));
    REQUIRE(a.maximizer.has_value());

    // The maximizer attains the estimate.
    const ScalarField psi = std::get<ScalarField>(*a.maximizer);
    double num = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.radius(i);
        num += r * r * std::norm(V.values[i]) * std::norm(psi[i]);
    }
    num *= std::pow(g.spacing(), 3);
    CHECK(std::sqrt(num / gradient_norm_sq(psi)) == doctest::Approx(a.value).epsilon(1e-6));
}

TEST_CASE("smallness quotient") {
    const Grid g = make_grid(3, 32, 8.0);
    CHECK(smallness_a_quotient(make_potential("zero", {}, g), gaussian(g)) == 0.0);
    const double eps = 0.05;
    const Potential V = make_potential("inverse_square", {eps, 0.0}, g);
    CHECK(smallness_a_quotient(V, gaussian(g)) == doctest::Approx(4.0 / 3.0 * eps).epsilon(1e-4));
}

TEST_CASE("smallness quotient is bounded through the Lambda chain") {
    const Grid g = make_grid(3, 16, 4.0);
    const Potential V = make_potential("gaussian", {0.5, 0.0, 1.0}, g);
    const double lam = estimate_lambda(V).value;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const ScalarField psi = random_bandlimited_scalar(g, seed, true);
        CHECK(smallness_a_quotient(V, psi) <= 2.0 * lam + 1e-3);
    }
}

TEST_CASE("Lambda condition closed form") {
    CHECK(lambda_condition_lhs(0.0, {1.0, 0.0}, 3, 1.0) == 0.0);
    const double expected = 4.0 * 0.01 * 3.0 * 3.0 * 2.0 + 8.0 * std::pow(0.01, 1.5) * std::pow(3.0, 1.5) * std::pow(2.0, 1.5);
    CHECK(lambda_condition_lhs(0.01, {1.0, 0.0}, 3, 1.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.8376).epsilon(1e-4));
    CHECK(lambda_condition_lhs(0.02, {1.0, 0.0}, 3, 1.0) > 1.44);
    CHECK_THROWS_AS(lambda_condition_lhs(0.01, {1.0, 0.0}, 2, 1.0), Error);
}

TEST_CASE("regularity constant") {
    const Grid g = make_grid(3, 16, 4.0);
    CHECK(estimate_regularity_constant(g, 0.0, 10, 3).value <= 1.0 + 1e-10);

    const VectorField grad = gradient(ScalarField::sample(g, [](const Point& x) {
        return cplx(std::exp(-(x[0] * x[0] + 2.0 * x[1] * x[1] + x[2] * x[2]) / 1.2));
    }));
    const VectorField Pf = gradient_projection(grad);
    for (double s : {0.0, 0.5, 1.0}) CHECK(weighted_norm(Pf, s) / weighted_norm(grad, s) == doctest::Approx(1.0).epsilon(1e-10));

    const ConstantEstimate C = estimate_regularity_constant(g, 1.0, 20, 5);
    CHECK(std::isfinite(C.value));
    CHECK(C.value >= 1.0 - 1e-10);
    CHECK(C.method == "family_sup");
    CHECK(C.maximizer.has_value());
}
