#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "lamelab/catalog.hpp"
#include "lamelab/spectral.hpp"

using namespace lamelab;
using std::numbers::pi;

namespace {

// Torus symbols mu |xi|^2 and (lambda + 2 mu) |xi|^2 with the Nyquist wavenumber zeroed.
std::vector<double> free_symbols(int d, int n, double L, const LameParams& p) {
    std::vector<double> axis;
    for (int m = 0; m < n; ++m) {
        int s = m < n / 2 ? m : m - n;
        if (m == n / 2) s = 0;
        axis.push_back(pi * s / L);
    }
    std::vector<double> out;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])] *
                                        axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
        out.push_back(p.speed_S() * k2);
        out.push_back(p.speed_P() * k2);
        int a = d - 1;
        while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == n) idx[static_cast<std::size_t>(a--)] = 0;
        if (a < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

double distance_to_set(double x, const std::vector<double>& sorted) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    double best = 1e300;
    if (it != sorted.end()) best = *it - x;
    if (it != sorted.begin()) best = std::min(best, x - *std::prev(it));
    return best;
}

}  // namespace

TEST_CASE("free dense spectrum is the set of torus symbols") {
    const LameParams p{1.0, 0.5};
    const Grid g = make_grid(3, 8, 2.0);
    const SpectralReport r = compute_spectrum(assemble(g, p, make_potential("zero", {}, g)), 40, 0.0);
    CHECK(r.method == "dense");
    REQUIRE(r.eigenvalues.size() == 40);
    const auto sym = free_symbols(3, 8, 2.0, p);
    for (cplx z : r.eigenvalues) {
        CHECK(distance_to_set(z.real(), sym) <= 1e-8);
        CHECK(std::abs(z.imag()) <= 1e-8);
        CHECK(z.real() >= -1e-8);
    }
    CHECK(std::abs(r.eigenvalues.front()) <= 1e-8);
    for (double res : r.residual) CHECK(res <= 1e-8);
}

TEST_CASE("shift-invert matches the dense solver") {
    const LameParams p{1.0, 0.0};
    const Grid g = make_grid(2, 16, 3.0);
    const LameOperator A = assemble(g, p, make_potential("gaussian", {-8.0, 1.0, 1.0}, g));
    SpectralOptions dense;
    SpectralOptions iterative;
    iterative.dense_limit = 0;
    const SpectralReport a = compute_spectrum(A, 3, -8.0, dense);
    const SpectralReport b = compute_spectrum(A, 3, -8.0, iterative);
    CHECK(a.method == "dense");
    CHECK(b.method == "shift_invert");
    REQUIRE(b.eigenvalues.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) <= 1e-7 * std::abs(a.eigenvalues[i]));
        CHECK(b.residual[i] <= 1e-8);
    }
}

TEST_CASE("localization scores") {
    const double L = 8.0;
    const Grid g = make_grid(3, 32, L);
    const double uniform = localization_score(sample_catalog_field("plane_mode", {1, 1, 1}, g));
    CHECK(uniform == doctest::Approx(4.0 * pi / 3.0 / 64.0).epsilon(2e-2));
    CHECK(localization_score(sample_catalog_field("gaussian_bump", {L / 10.0, 2}, g)) > 0.999);
    CHECK_THROWS_AS(localization_score(VectorField::zeros(g)), Error);
}

TEST_CASE("classification of point spectrum") {
    const LameParams p{1.0, 0.0};
    CHECK(classify_point_spectrum(SpectralReport{}, SpectralReport{}).candidates.empty());

    const Grid a = make_grid(2, 8, 4.0);
    const Grid b = make_grid(2, 16, 8.0);
    const auto free_a = compute_spectrum(assemble(a, p, make_potential("zero", {}, a)), 8, -0.1);
    const auto free_b = compute_spectrum(assemble(b, p, make_potential("zero", {}, b)), 8, -0.1);
    CHECK(classify_point_spectrum(free_a, free_b).candidates.empty());

    const Grid c = make_grid(2, 16, 3.0);
    const Grid e = make_grid(2, 32, 6.0);
    const auto well_a = compute_spectrum(assemble(c, p, make_potential("gaussian", {-50.0, 0.0, 1.0}, c)), 3, -50.0);
    const auto well_b = compute_spectrum(assemble(e, p, make_potential("gaussian", {-50.0, 0.0, 1.0}, e)), 3, -50.0);
    const SpectralReport cls = classify_point_spectrum(well_a, well_b);
    REQUIRE_FALSE(cls.candidates.empty());
    CHECK(cls.candidates.front().real() < 0.0);
    CHECK(cls.drift.size() == cls.eigenvalues.size());

    CHECK_THROWS_AS(classify_point_spectrum(well_a, well_a), Error);
}
