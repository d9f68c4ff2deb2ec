#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lamelab/catalog.hpp"
#include "lamelab/multiplier.hpp"
#include "lamelab/resolvent.hpp"

using namespace lamelab;
using std::numbers::pi;

namespace {
const double L = 8.0;
Grid grid() { return make_grid(3, 16, L); }
}  // namespace

TEST_CASE("zero data gives zero solution") {
    const Grid g = grid();
    const LameParams p{1.0, 0.0};
    const VectorField u = solve(g, p, make_potential("zero", {}, g), cplx(0.0, 1.0), VectorField::zeros(g));
    CHECK(u.max_abs() == 0.0);
    const AprioriReport r = apriori_report(u, VectorField::zeros(g), cplx(0.0, 1.0), p, make_potential("zero", {}, g));
    CHECK(r.grad_u == 0.0);
    CHECK(r.x_f == 0.0);
    CHECK(r.inv_x_u == 0.0);
}

TEST_CASE("manufactured round trip") {
    const Grid g = grid();
    const LameParams p{1.0, 0.5};
    const VectorField u0 = sample_catalog_field("gaussian_bump", {1, 1}, g);
    for (const char* name : {"zero", "gaussian"}) {
        const Potential V = std::string(name) == "zero" ? make_potential("zero", {}, g)
                                                        : make_potential("gaussian", {0.4, -0.3, 1.5}, g);
        const cplx k(1.0, 1.0);
        const VectorField f = cplx(-1.0) * apply_perturbed(u0, p, V) + k * u0;
        const VectorField u = solve(g, p, V, k, f);
        CHECK(l2_norm(u - u0) <= 1e-8 * l2_norm(u0));
        CHECK(equation_residual(u, f, p, V, k) <= 1e-8 * l2_norm(f));
    }
}

TEST_CASE("random round trips") {
    const Grid g = make_grid(2, 16, 4.0);
    const LameParams p{1.0, 0.0};
    const Potential V = make_potential("zero", {}, g);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const VectorField u0 = random_bandlimited_field(g, seed, false);
        const cplx k(0.5 * static_cast<double>(seed), seed % 2 ? 1.0 : -0.5);
        const VectorField f = k * u0 - apply_lame(u0, p);
        CHECK(l2_norm(solve(g, p, V, k, f) - u0) <= 1e-8 * l2_norm(u0));
    }
}

TEST_CASE("resonant frequency is reported") {
    const Grid g = grid();
    const VectorField f = sample_catalog_field("gaussian_bump", {1, 1}, g);
    const cplx k = 3.0 * (pi / L) * (pi / L);
    try {
        solve(g, {1.0, 0.0}, make_potential("zero", {}, g), k, f);
        FAIL("expected a resonance");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resonant);
        CHECK(std::string(e.what()).find("resonant frequency") != std::string::npos);
    }
}

TEST_CASE("a-priori quantities in the free case") {
    const Grid g = make_grid(3, 32, 8.0);
    const LameParams p{1.0, 0.0};
    const Potential V = make_potential("zero", {}, g);
    const VectorField f = sample_catalog_field("gaussian_bump", {1, 1}, g);
    for (cplx k : {cplx(1.0, 3.0), cplx(0.5, -2.0), cplx(-1.0, 1.0)}) {
        const VectorField u = solve(g, p, V, k, f);
        const AprioriReport r = apriori_report(u, f, k, p, V);
        CHECK(r.branch == 2);
        CHECK(r.ratio(r.grad_u) <= 12.0 + 1e-2);
        if (k.real() < 0.0) CHECK(std::isnan(r.grad_uS_minus));
    }
    const cplx k(4.0, 1.0);
    const VectorField u = solve(g, p, V, k, f);
    const AprioriReport r = apriori_report(u, f, k, p, V);
    CHECK(r.branch == 1);
    const double hardy = 2.0 / (3.0 - 2.0) / std::sqrt(p.min_speed()) * (r.grad_uS_minus + r.grad_uP_minus);
    CHECK(r.inv_x_u <= hardy + 1e-6);
    CHECK_THROWS_AS(apriori_report(u, cplx(2.0) * f, k, p, V), Error);
}

TEST_CASE("sweep") {
    const Grid g = grid();
    const LameParams p{1.0, 0.0};
    const Potential V = make_potential("zero", {}, g);
    const auto trivial = sweep(g, p, V, VectorField::zeros(g), {cplx(0.0, 1.0)});
    CHECK(trivial.sup_ratio == 0.0);

    const VectorField f = sample_catalog_field("gaussian_bump", {1, 1}, g);
    const auto ks = k_rectangle(0.5, 8.0, 4, -4.0, 4.0, 4);
    const auto a = sweep(g, p, V, f, ks);
    const auto b = sweep(g, p, V, cplx(7.0) * f, ks);
    REQUIRE(a.points.size() == 16);
    for (std::size_t i = 0; i < a.points.size(); ++i)
        CHECK(std::abs(a.points[i].ratio - b.points[i].ratio) <= 1e-10 * a.points[i].ratio);
    double mx = 0.0;
    for (const auto& pt : a.points) mx = std::max(mx, pt.ratio);
    CHECK(a.sup_ratio == mx);

    const cplx res = 3.0 * (pi / L) * (pi / L);
    const auto s = sweep(g, p, V, f, {res, cplx(1.0, 1.0)});
    CHECK(s.points[0].skipped);
    CHECK_FALSE(s.points[1].skipped);
    CHECK_THROWS_AS(sweep(g, p, V, f, {res}), Error);
}

TEST_CASE("k rectangle ordering") {
    const auto ks = k_rectangle(0.0, 1.0, 3, -1.0, 1.0, 2);
    REQUIRE(ks.size() == 6);
    CHECK(ks[0] == cplx(0.0, -1.0));
    CHECK(ks[1] == cplx(0.5, -1.0));
    CHECK(ks[3] == cplx(0.0, 1.0));
}
