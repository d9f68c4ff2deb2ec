#include "lamelab/radial_quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace lamelab {
namespace {

constexpr int kGaussOrder = 20;
// Cutoff radius relative to L. Periodic images of a field sit 2L away and must
// see chi ~ 0, while chi stays wide enough to resolve on the grid.
constexpr double kCutoffScale = 0.75;

double cutoff(double r, double L) {
    const double t = r / (kCutoffScale * L);
    const double t2 = t * t;
    const double t4 = t2 * t2;
    return std::exp(-t4 * t4);
}

// Gamma(d/2) (2/z)^{d/2-1} J_{d/2-1}(z): the angular average of exp(i xi.x) at z = |xi||x|.
double angular_kernel(int d, double z) {
    if (z < 1e-8) return 1.0;
    switch (d) {
        case 1: return std::cos(z);
        case 3: return std::sin(z) / z;
        default: {
            const double nu = 0.5 * d - 1.0;
            return std::tgamma(0.5 * d) * std::pow(2.0 / z, nu) * std::cyl_bessel_j(nu, z);
        }
    }
}

double sphere_area(int d) { return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d); }

bool is_smooth_power(double alpha) {
    return alpha >= 0.0 && alpha == std::floor(alpha) && std::fmod(alpha, 2.0) == 0.0;
}

struct PanelRule {
    std::vector<double> r;
    std::vector<double> w;  // includes the r^{alpha+d-1} chi(r) factor
};

PanelRule radial_rule(int d, double L, double alpha, double rho_max) {
    using Gauss = boost::math::quadrature::gauss<double, kGaussOrder>;
    const double R = 2.0 * L;
    const int panels = std::max(8, static_cast<int>(std::ceil(rho_max * R / std::numbers::pi)) + 8);
    const double width = R / panels;
    const auto& abscissa = Gauss::abscissa();
    const auto& weights = Gauss::weights();

    // Boost stores the non-negative half of the symmetric rule.
    std::vector<std::pair<double, double>> ref;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        ref.emplace_back(abscissa[i], weights[i]);
        if (abscissa[i] != 0.0) ref.emplace_back(-abscissa[i], weights[i]);
    }

    PanelRule rule;
    const double beta = alpha + d - 1.0;
    auto add_panel = [&](double a, double b) {
        for (const auto& [t, wt] : ref) {
            const double r = a + 0.5 * (b - a) * (t + 1.0);
            rule.r.push_back(r);
            rule.w.push_back(0.5 * (b - a) * wt * std::pow(r, beta) * cutoff(r, L));
        }
    };
    int first = 0;
    if (beta != std::floor(beta) || beta < 0.0) {
        // r^beta is not smooth at 0: grade the first panel geometrically and
        // integrate the innermost piece exactly, where chi and the kernel are 1.
        constexpr int kLevels = 60;
        const double eps = std::ldexp(width, -kLevels);
        rule.r.push_back(0.0);
        rule.w.push_back(std::pow(eps, beta + 1.0) / (beta + 1.0));
        for (int j = kLevels; j > 0; --j) add_panel(std::ldexp(width, -j), std::ldexp(width, 1 - j));
        first = 1;
    }
    for (int p = first; p < panels; ++p) add_panel(p * width, (p + 1) * width);
    return rule;
}

double transform_with(const PanelRule& rule, int d, double rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.r.size(); ++i) s += rule.w[i] * angular_kernel(d, rho * rule.r[i]);
    return sphere_area(d) * s;
}

std::vector<double> build_weights(const Grid& g, double alpha) {
    const int d = g.dim();
    const int n = g.points();
    const double L = g.half_width();
    const std::size_t N = g.size();
    const auto radii = g.radii();
    const double hd = g.cell_volume();

    std::vector<double> q(N);
    if (is_smooth_power(alpha)) {
        for (std::size_t i = 0; i < N; ++i) q[i] = hd * std::pow(radii[i], alpha);
        return q;
    }

    const double base = std::numbers::pi / L;
    const double rho_max = base * (n / 2) * std::sqrt(static_cast<double>(d));
    const PanelRule rule = radial_rule(d, L, alpha, rho_max);

    // The transform depends on the mode only through |m|^2.
    const int max_m2 = d * (n / 2) * (n / 2);
    std::vector<double> table(static_cast<std::size_t>(max_m2) + 1, 0.0);
    std::vector<char> needed(table.size(), 0);
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t rem = i;
        int m2 = 0;
        for (int a = 0; a < d; ++a) {
            int j = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
            int m = j < n / 2 ? j : j - n;
            m2 += m * m;
        }
        needed[static_cast<std::size_t>(m2)] = 1;
    }
    for (std::size_t m2 = 0; m2 < table.size(); ++m2)
        if (needed[m2]) table[m2] = transform_with(rule, d, base * std::sqrt(static_cast<double>(m2)));

    // Q_j = Re (1/N) sum_xi W(|xi|) exp(-i xi.x_j), evaluated as one forward DFT.
    const double x0 = g.coordinate(0);
    std::vector<cplx> a(N);
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t rem = i;
        int m2 = 0;
        int msum = 0;
        for (int ax = 0; ax < d; ++ax) {
            int j = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
            int m = j < n / 2 ? j : j - n;
            m2 += m * m;
            msum += m;
        }
        const double phase = -base * msum * x0;
        a[i] = table[static_cast<std::size_t>(m2)] * std::polar(1.0, phase) / static_cast<double>(N);
    }
    fourier::forward(a, d, n);

    for (std::size_t i = 0; i < N; ++i) {
        const double r = radii[i];
        q[i] = hd * (1.0 - cutoff(r, L)) * std::pow(r, alpha) + a[i].real();
    }
    return q;
}

}  // namespace

double cutoff_power_transform(int d, double L, double alpha, double rho) {
    require(alpha > -d, "radial power must exceed -d");
    return transform_with(radial_rule(d, L, alpha, std::max(rho, 1.0)), d, rho);
}

std::shared_ptr<const std::vector<double>> power_weights(const Grid& g, double alpha) {
    require(alpha > -g.dim(), "radial power must exceed -d for the integral to exist");
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const std::vector<double>>> cache;

    char key[128];
    std::snprintf(key, sizeof key, "%d/%d/%.17g/%.17g", g.dim(), g.points(), g.half_width(), alpha);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto q = std::make_shared<const std::vector<double>>(build_weights(g, alpha));
    std::lock_guard lock(mutex);
    return cache.emplace(key, q).first->second;
}

double integrate_power(const Grid& g, std::span<const double> values, double alpha) {
    const auto q = power_weights(g, alpha);
    require(values.size() == q->size(), "value count does not match the grid");
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += (*q)[i] * values[i];
    return s;
}

cplx integrate_power(const Grid& g, std::span<const cplx> values, double alpha) {
    const auto q = power_weights(g, alpha);
    require(values.size() == q->size(), "value count does not match the grid");
    cplx s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += (*q)[i] * values[i];
    return s;
}

}  // namespace lamelab
