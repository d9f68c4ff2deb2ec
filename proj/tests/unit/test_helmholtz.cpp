#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lamelab/catalog.hpp"
#include "lamelab/helmholtz.hpp"

using namespace lamelab;
using std::numbers::pi;

namespace {
const double L = 8.0;
Grid grid3() { return make_grid(3, 16, L); }
}  // namespace

TEST_CASE("divergence-free mode is its own solenoidal part") {
    const Grid g = grid3();
    const VectorField u = sample_catalog_field("divfree_mode", {1, 2, 1}, g);
    const Decomposition d = decompose(u);
    CHECK(l2_norm(d.u_S - u) < 1e-13 * l2_norm(u));
    CHECK(d.u_P.max_abs() < 1e-13);
}

TEST_CASE("gradient mode is its own gradient part") {
    const Grid g = grid3();
    const VectorField u = sample_catalog_field("gradient_mode", {1, 1}, g);
    const Decomposition d = decompose(u);
    CHECK(l2_norm(d.u_P - u) < 1e-13 * l2_norm(u));
    CHECK(d.u_S.max_abs() < 1e-13);
    const ScalarField cosine = ScalarField::sample(g, [](const Point& x) { return cplx(std::cos(pi * x[0] / L)); });
    CHECK(l2_norm(d.phi - cosine) < 1e-12 * l2_norm(cosine));
}

TEST_CASE("sum of modes splits into the summands") {
    const Grid g = grid3();
    const VectorField a = sample_catalog_field("divfree_mode", {1, 2, 1}, g);
    const VectorField b = sample_catalog_field("gradient_mode", {1, 1}, g);
    const Decomposition d = decompose(a + b);
    CHECK(l2_norm(d.u_S - a) < 1e-12);
    CHECK(l2_norm(d.u_P - b) < 1e-12);
}

TEST_CASE("random fields: exact reconstruction and orthogonality") {
    const Grid g = grid3();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const VectorField u = random_bandlimited_field(g, seed, seed % 2 == 0);
        const Decomposition d = decompose(u);
        const double nu = l2_norm(u);
        CHECK(l2_norm(u - d.u_S - d.u_P) < 1e-12 * nu);
        CHECK(l2_norm(divergence(d.u_S)) < 1e-12 * std::sqrt(gradient_norm_sq(u)));
        CHECK(std::abs(inner_l2(d.u_S, d.u_P)) < 1e-12 * nu * nu);
        CHECK(l2_norm(gradient(d.phi) - d.u_P) < 1e-12 * nu);
        CHECK(std::abs(to_fourier(d.phi)[0]) < 1e-10);
        CHECK(l2_norm(gradient_projection(u) - d.u_P) == 0.0);
    }
}

TEST_CASE("constant field belongs to the solenoidal part") {
    const Grid g = make_grid(2, 8, 1.0);
    const VectorField u = VectorField::single_component(ScalarField::constant(g, 2.0), 1);
    const Decomposition d = decompose(u);
    CHECK(d.u_P.max_abs() < 1e-15);
    CHECK(l2_norm(d.u_S - u) < 1e-14);
}

TEST_CASE("potential of a gradient field") {
    const Grid g = grid3();
    const VectorField u = sample_catalog_field("gradient_mode", {1, 1}, g);
    const ScalarField cosine = ScalarField::sample(g, [](const Point& x) { return cplx(std::cos(pi * x[0] / L)); });
    CHECK(l2_norm(potential_of_gradient(u) - cosine) < 1e-12 * l2_norm(cosine));
    CHECK(potential_of_gradient(VectorField::zeros(g)).max_abs() == 0.0);
    CHECK_THROWS_WITH_AS(potential_of_gradient(sample_catalog_field("divfree_mode", {1, 2, 1}, g)),
                         doctest::Contains("not a gradient field"), Error);
}
