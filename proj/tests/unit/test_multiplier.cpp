#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lamelab/catalog.hpp"
#include "lamelab/multiplier.hpp"

using namespace lamelab;
using std::numbers::pi;

namespace {

// Grid with spacing 0.5 around unit-width bumps, fine enough for 1e-8 residuals.
Grid fine() { return make_grid(3, 32, 8.0); }

struct Pair {
    VectorField u;
    VectorField f;
    double c;
};

Pair manufactured(const Grid& g, bool solenoidal, cplx k, double c = 1.0) {
    VectorField u = solenoidal ? solenoidal_bump(g, 1.0) : potential_bump(g, 1.0);
    VectorField f = manufacture_component(u, c, k);
    return {u, f, c};
}

double finite_difference(const std::function<double(double)>& f, double r) {
    const double h = 1e-4;
    return (f(r - 2 * h) - 8 * f(r - h) + 8 * f(r + h) - f(r + 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("radial weight derivatives agree with finite differences") {
    for (const RadialWeight& w : {quadratic_weight(), gaussian_weight(1.7), constant_weight(2.0), linear_weight(0.4)}) {
        for (double r : {0.3, 1.1, 2.9}) {
            CHECK(w.psi1(r) == doctest::Approx(finite_difference(w.psi, r)).epsilon(1e-7));
            CHECK(w.psi2(r) == doctest::Approx(finite_difference(w.psi1, r)).epsilon(1e-6));
            CHECK(w.psi3(r) == doctest::Approx(finite_difference(w.psi2, r)).epsilon(1e-6));
            CHECK(w.psi4(r) == doctest::Approx(finite_difference(w.psi3, r)).epsilon(1e-5));
        }
    }
    // Laplacian and bilaplacian of |x|^2 in d = 3.
    CHECK(quadratic_weight().laplacian(1.3, 3) == doctest::Approx(6.0));
    CHECK(quadratic_weight().bilaplacian(1.3, 3) == doctest::Approx(0.0));
    // exp(-r^2): lap = (4 r^2 - 2 d) e^{-r^2}
    const RadialWeight gw = gaussian_weight(1.0);
    CHECK(gw.laplacian(0.8, 3) == doctest::Approx((4 * 0.64 - 6) * std::exp(-0.64)).epsilon(1e-12));
    Point x{0.3, -0.4, 1.2};
    Point v{1.0, 0.0, 0.0};
    // Hessian of |x|^2 is 2 I.
    CHECK(quadratic_weight().hessian_form(x, v, 3) == doctest::Approx(2.0));
    CHECK(make_weight("linear", {2.0}).linear_coefficient == 2.0);
    CHECK_THROWS_AS(make_weight("cubic", {}), Error);
}

TEST_CASE("manufactured right-hand sides") {
    const double L = 8.0;
    const Grid g = make_grid(3, 16, L);
    const LameParams p{1.0, 0.0};
    CHECK(manufacture_f(VectorField::zeros(g), p, 1.0).f.max_abs() == 0.0);
    const VectorField s = sample_catalog_field("divfree_mode", {1, 2, 1}, g);
    const ManufacturedPair m = manufacture_f(s, p, 1.0);
    CHECK(l2_norm(m.f - (1.0 - (pi / L) * (pi / L)) * s) < 1e-12 * l2_norm(s));

    const VectorField b = sample_catalog_field("gaussian_bump", {1, 1}, g);
    const ManufacturedPair mb = manufacture_f(b, p, cplx(1.0, 1.0));
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(mb.f[0][i].imag() - b[0][i].real()));
    CHECK(err < 1e-14);
}

TEST_CASE("first identity") {
    const Grid g = fine();
    const cplx k(4.0, 1.0);
    CHECK(identity_first(VectorField::zeros(g), VectorField::zeros(g), 1.0, k, quadratic_weight()).residual == 0.0);
    for (bool sol : {true, false}) {
        const Pair P = manufactured(g, sol, k, sol ? 1.0 : 2.0);
        const IdentityReport r = identity_first(P.u, P.f, P.c, k, quadratic_weight());
        CHECK(r.residual <= 1e-8 * r.scale());
        const VectorField bad = cplx(1.1) * P.f;
        CHECK_THROWS_WITH_AS(identity_first(P.u, bad, P.c, k, quadratic_weight()), doctest::Contains("invalid pair"), Error);
        const IdentityReport rb = identity_first(P.u, bad, P.c, k, quadratic_weight(), {false});
        CHECK(rb.residual >= 0.05 * std::abs(rb.rhs));
    }
}

TEST_CASE("second identity") {
    const Grid g = fine();
    const Pair real_k = manufactured(g, true, 4.0);
    const IdentityReport r0 = identity_second(real_k.u, real_k.f, 1.0, 4.0, constant_weight(1.0));
    CHECK(std::abs(r0.lhs) <= 1e-8);
    CHECK(std::abs(r0.rhs) <= 1e-8);

    const cplx k(1.0, 1.0);
    const Pair P = manufactured(g, false, k);
    const IdentityReport r = identity_second(P.u, P.f, 1.0, k, constant_weight(1.0));
    CHECK(r.residual <= 1e-8 * r.scale());
    // ||u||^2 <= |k2|^{-1} int |u| |f|
    double uf = 0.0;
    for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < g.size(); ++i) uf += std::abs(P.u[j][i]) * std::abs(P.f[j][i]);
    uf *= g.cell_volume();
    const double nu = l2_norm(P.u);
    CHECK(nu * nu <= uf / std::abs(k.imag()) + 1e-8);

    const IdentityReport rb = identity_second(P.u, cplx(1.1) * P.f, 1.0, k, constant_weight(1.0), {false});
    CHECK(rb.residual >= 0.05 * std::abs(rb.rhs));
}

TEST_CASE("third identity") {
    const Grid g = fine();
    const cplx k(4.0, 1.0);
    CHECK(identity_third(VectorField::zeros(g), VectorField::zeros(g), 1.0, k, quadratic_weight()).residual == 0.0);
    const Pair P = manufactured(g, true, k);
    const IdentityReport r = identity_third(P.u, P.f, 1.0, k, quadratic_weight());
    CHECK(r.residual <= 1e-8 * r.scale());
    const IdentityReport rg = identity_third(P.u, P.f, 1.0, k, gaussian_weight(2.0));
    CHECK(rg.residual <= 1e-6 * rg.scale());
    CHECK_THROWS_AS(identity_third(P.u, P.f, 1.0, k, linear_weight(1.0)), Error);
}

TEST_CASE("twisted fields") {
    const Grid g = make_grid(3, 16, 4.0);
    const VectorField u = potential_bump(g, 0.7);
    const double c = 2.0;
    const VectorField t0 = twisted_field(u, c, cplx(0.0, 1.0));
    CHECK(l2_norm(t0 - cplx(std::sqrt(c)) * u) == 0.0);
    const VectorField tp = twisted_field(u, c, cplx(3.0, 1.0));
    const VectorField tm = twisted_field(u, c, cplx(3.0, -1.0));
    double mod = 0.0, conjugate = 0.0;
    for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < g.size(); ++i) {
            mod = std::max(mod, std::abs(std::abs(tp[j][i]) - std::sqrt(c) * std::abs(u[j][i])));
            conjugate = std::max(conjugate, std::abs(tm[j][i] - std::conj(tp[j][i])));
        }
    CHECK(mod < 1e-14);
    CHECK(conjugate < 1e-14);
}

TEST_CASE("twisted gradient identity") {
    const Grid g = fine();
    const VectorField u = solenoidal_bump(g, 1.0);
    const IdentityReport r0 = identity_twisted_gradient(u, 1.0, cplx(0.0, 2.0));
    CHECK(std::abs(r0.lhs - gradient_norm_sq(u)) <= 1e-12 * std::abs(r0.lhs));
    const IdentityReport r = identity_twisted_gradient(u, 1.0, 4.0);
    CHECK(r.residual <= 1e-6 * r.scale());
    const IdentityReport r2 = identity_twisted_gradient(u, 2.0, 4.0);
    const IdentityReport r1 = identity_twisted_gradient(u, 1.0, 8.0);
    // lhs is c times the speed-one value at k/c
    CHECK(std::abs(r2.lhs - 2.0 * identity_twisted_gradient(u, 1.0, 2.0).lhs) <= 1e-10 * std::abs(r2.lhs));
    CHECK(r1.residual <= 1e-6 * r1.scale());
}

TEST_CASE("fundamental identity") {
    const Grid g = fine();
    const cplx k(4.0, 1.0);
    const IdentityReport z = identity_fund(VectorField::zeros(g), VectorField::zeros(g), 1.0, k);
    for (const auto& [name, value] : z.terms) CHECK(std::abs(value) == 0.0);

    const Pair P = manufactured(g, true, k);
    const IdentityReport r = identity_fund(P.u, P.f, 1.0, k);
    CHECK(r.residual <= 1e-5 * r.scale());
    const IdentityReport comb = fund_from_components(P.u, P.f, 1.0, k);
    CHECK(std::abs(comb.lhs - r.lhs) <= 1e-9 * std::abs(r.lhs));
    CHECK(std::abs(comb.rhs - r.rhs) <= 1e-9 * std::abs(r.rhs));

    const Pair Q = manufactured(g, false, 4.0);
    const IdentityReport r0 = identity_fund(Q.u, Q.f, 1.0, 4.0);
    CHECK(std::abs(r0.term("I3")) == 0.0);
}

TEST_CASE("energy identity") {
    const double L = 8.0;
    const Grid g = make_grid(3, 16, L);
    const LameParams p{1.0, 0.0};
    const cplx k(1.0, 2.0);
    const VectorField u = sample_catalog_field("divfree_mode", {1, 2, 1}, g) + sample_catalog_field("gradient_mode", {2, 1}, g);
    const ManufacturedPair m = manufacture_f(u, p, k);
    for (int sign : {1, -1}) {
        const IdentityReport r = identity_energy(m.u, m.f, p, k, sign);
        CHECK(r.residual <= 1e-8 * r.scale());
    }
    const IdentityReport zero = identity_energy(VectorField::zeros(g), VectorField::zeros(g), p, k, 1);
    CHECK(zero.residual == 0.0);
    CHECK(std::abs(zero.lhs) == 0.0);
}
