#include "lamelab/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace lamelab {
namespace {

int index_param(const std::vector<double>& params, std::size_t i, int d, const char* what) {
    const double v = params[i];
    require(v == std::floor(v) && v >= 1 && v <= d,
            std::string(what) + " must be an integer in [1, d]");
    return static_cast<int>(v) - 1;
}

void expect_params(const std::string& name, const std::vector<double>& params, std::size_t count) {
    require(params.size() == count,
            name + " expects " + std::to_string(count) + " parameters, got " + std::to_string(params.size()));
}

double sq_radius(const Point& x, int d) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    return r2;
}

}  // namespace

double smooth_cutoff(double r, double a, double b) {
    if (r <= a) return 1.0;
    if (r >= b) return 0.0;
    auto bump = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
    const double t = (r - a) / (b - a);
    return bump(1.0 - t) / (bump(1.0 - t) + bump(t));
}

VectorField sample_catalog_field(const std::string& name, const std::vector<double>& params, const Grid& g) {
    const int d = g.dim();
    const double L = g.half_width();
    const double pi = std::numbers::pi;

    if (name == "gaussian_bump") {
        expect_params(name, params, 2);
        const double sigma = params[0];
        require(sigma > 0.0, "gaussian_bump needs sigma > 0");
        require(sigma <= L / 6.0, "gaussian_bump with sigma > L/6 does not decay on the box");
        const int comp = index_param(params, 1, d, "component");
        auto s = ScalarField::sample(g, [&](const Point& x) {
            return cplx(std::exp(-sq_radius(x, d) / (2.0 * sigma * sigma)));
        });
        return VectorField::single_component(s, comp);
    }
    if (name == "divfree_mode") {
        expect_params(name, params, 3);
        const int axis = index_param(params, 0, d, "axis");
        const int comp = index_param(params, 1, d, "component");
        require(axis != comp, "divfree_mode needs axis != component");
        const double k = params[2] * pi / L;
        auto s = ScalarField::sample(g, [&](const Point& x) { return cplx(std::sin(k * x[axis])); });
        return VectorField::single_component(s, comp);
    }
    if (name == "gradient_mode") {
        expect_params(name, params, 2);
        const int axis = index_param(params, 0, d, "axis");
        const double k = params[1] * pi / L;
        auto s = ScalarField::sample(g, [&](const Point& x) { return cplx(-k * std::sin(k * x[axis])); });
        return VectorField::single_component(s, axis);
    }
    if (name == "plane_mode") {
        expect_params(name, params, 3);
        const int axis = index_param(params, 0, d, "axis");
        const int comp = index_param(params, 1, d, "component");
        const double k = params[2] * pi / L;
        auto s = ScalarField::sample(g, [&](const Point& x) { return std::polar(1.0, k * x[axis]); });
        return VectorField::single_component(s, comp);
    }
    if (name == "hardy_optimizer") {
        expect_params(name, params, 2);
        const double eps = params[0];
        require(eps > 0.0, "hardy_optimizer needs eps > 0");
        const int comp = index_param(params, 1, d, "component");
        const double p = -(d - 2) / 2.0 + eps;
        auto s = ScalarField::sample(g, [&](const Point& x) {
            const double r = std::sqrt(sq_radius(x, d));
            return cplx(std::pow(r, p) * smooth_cutoff(r, L / 4.0, L / 2.0));
        });
        return VectorField::single_component(s, comp);
    }
    fail("unknown catalog field '" + name + "'");
}

VectorField solenoidal_bump(const Grid& g, double sigma, const Point& center) {
    require(g.dim() >= 2, "solenoidal_bump needs d >= 2");
    const int d = g.dim();
    const double s2 = sigma * sigma;
    std::vector<std::vector<cplx>> c(static_cast<std::size_t>(d), std::vector<cplx>(g.size()));
    for_each_node(g, [&](std::size_t i, const Point& x) {
        Point y{};
        for (int a = 0; a < d; ++a) y[a] = x[a] - center[a];
        const double G = std::exp(-sq_radius(y, d) / (2.0 * s2));
        // -d_2 G and d_1 G
        c[0][i] = y[1] / s2 * G;
        c[1][i] = -y[0] / s2 * G;
    });
    std::vector<ScalarField> comps;
    for (auto& v : c) comps.emplace_back(g, std::move(v));
    return VectorField(g, std::move(comps));
}

VectorField potential_bump(const Grid& g, double sigma, const Point& center) {
    const int d = g.dim();
    const double s2 = sigma * sigma;
    std::vector<std::vector<cplx>> c(static_cast<std::size_t>(d), std::vector<cplx>(g.size()));
    for_each_node(g, [&](std::size_t i, const Point& x) {
        Point y{};
        for (int a = 0; a < d; ++a) y[a] = x[a] - center[a];
        const double G = std::exp(-sq_radius(y, d) / (2.0 * s2));
        for (int a = 0; a < d; ++a) c[static_cast<std::size_t>(a)][i] = -y[a] / s2 * G;
    });
    std::vector<ScalarField> comps;
    for (auto& v : c) comps.emplace_back(g, std::move(v));
    return VectorField(g, std::move(comps));
}

ScalarField random_bandlimited_scalar(const Grid& g, std::uint64_t seed, bool real_valued) {
    const int d = g.dim();
    const int n = g.points();
    const int band = n / 4;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<cplx> hat(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t rem = i;
        bool inside = true;
        for (int a = 0; a < d; ++a) {
            int j = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
            int m = j < n / 2 ? j : j - n;
            if (std::abs(m) >= band) inside = false;
        }
        // Draw for every mode so the stream does not depend on the band.
        const double re = normal(rng);
        const double im = normal(rng);
        if (inside) hat[i] = cplx(re, im);
    }
    auto f = from_fourier(g, std::move(hat));
    if (!real_valued) return f;
    std::vector<cplx> v(f.values().begin(), f.values().end());
    for (auto& z : v) z = z.real();
    return ScalarField(g, std::move(v));
}

VectorField random_bandlimited_field(const Grid& g, std::uint64_t seed, bool real_valued) {
    std::vector<ScalarField> comps;
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(g.dim()));
    std::mt19937_64 mix(seed);
    for (auto& s : seeds) s = mix();
    for (int a = 0; a < g.dim(); ++a)
        comps.push_back(random_bandlimited_scalar(g, seeds[static_cast<std::size_t>(a)], real_valued));
    return VectorField(g, std::move(comps));
}

}  // namespace lamelab
