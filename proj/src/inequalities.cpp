#include "lamelab/inequalities.hpp"

#include <cmath>
#include <cstdio>

#include "lamelab/catalog.hpp"
#include "lamelab/helmholtz.hpp"
#include "lamelab/parallel.hpp"
#include "lamelab/radial_quadrature.hpp"

namespace lamelab {
namespace {

std::vector<double> abs_sq(const ScalarField& f) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = std::norm(f[i]);
    return v;
}

std::vector<double> abs_sq(const VectorField& u) {
    std::vector<double> v(u.grid().size(), 0.0);
    for (const auto& c : u.components())
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += std::norm(c[i]);
    return v;
}

void require_nonzero(const ScalarField& psi) {
    require(psi.max_abs() > 0.0, "undefined quotient: psi is zero");
}

}  // namespace

std::string describe(const Grid& g) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "d=%d n=%d L=%g", g.dim(), g.points(), g.half_width());
    return buf;
}

double hardy_constant(int d, bool weighted) {
    const double k = weighted ? d - 1.0 : d - 2.0;
    return 4.0 / (k * k);
}

double hardy_quotient(const ScalarField& psi, bool weighted) {
    const Grid& g = psi.grid();
    require_nonzero(psi);
    if (!weighted) {
        require(g.dim() >= 3, "classical Hardy quotient needs d >= 3");
        const double den = gradient_norm_sq(psi);
        require(den > 0.0, "undefined quotient: psi has no gradient");
        return integrate_power(g, abs_sq(psi), -2.0) / den;
    }
    require(g.dim() >= 2, "weighted Hardy quotient needs d >= 2");
    const double den = integrate_power(g, abs_sq(gradient(psi)), 1.0);
    require(den > 0.0, "undefined quotient: psi has no gradient");
    return integrate_power(g, abs_sq(psi), -1.0) / den;
}

ConstantEstimate estimate_lambda(const Potential& V, const LanczosOptions& opt) {
    const Grid& g = V.grid();
    ConstantEstimate est;
    est.method = "generalized_eig";
    est.resolution = describe(g);
    if (V.is_zero() || V.values.max_abs() == 0.0) {
        est.maximizer = AnyField(ScalarField::zeros(g));
        return est;
    }

    const std::size_t N = g.size();
    const auto radii = g.radii();
    std::vector<double> W(N);
    for (std::size_t i = 0; i < N; ++i) W[i] = radii[i] * radii[i] * std::norm(V.values[i]);

    std::vector<double> inv_k(N);
    for_each_mode(g, [&](std::size_t i, const Point& xi) {
        double k2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) k2 += xi[a] * xi[a];
        inv_k[i] = k2 > 0.0 ? 1.0 / std::sqrt(k2) : 0.0;
    });

    // K = (-lap)^{-1/2} on modes with xi != 0, zero elsewhere. Keeps real data real.
    auto apply_K = [&](std::span<const double> x, std::vector<double>& y) {
        std::vector<cplx> c(x.begin(), x.end());
        fourier::forward(c, g.dim(), g.points());
        for (std::size_t i = 0; i < N; ++i) c[i] *= inv_k[i];
        fourier::inverse(c, g.dim(), g.points());
        y.resize(N);
        for (std::size_t i = 0; i < N; ++i) y[i] = c[i].real();
    };
    RealOp B = [&](std::span<const double> x, std::span<double> y) {
        std::vector<double> t;
        apply_K(x, t);
        for (std::size_t i = 0; i < N; ++i) t[i] *= W[i];
        std::vector<double> u;
        apply_K(t, u);
        std::copy(u.begin(), u.end(), y.begin());
    };
    auto project = [&](std::span<double> x) {
        std::vector<cplx> c(x.begin(), x.end());
        fourier::forward(c, g.dim(), g.points());
        for (std::size_t i = 0; i < N; ++i)
            if (inv_k[i] == 0.0) c[i] = 0.0;
        fourier::inverse(c, g.dim(), g.points());
        for (std::size_t i = 0; i < N; ++i) x[i] = c[i].real();
    };

    const LanczosResult lr = lanczos_largest(B, N, opt, project);
    if (!lr.converged) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "Lambda estimate did not converge: relative residual %.3e after %d products",
                      lr.residual / std::max(lr.value, 1e-300), lr.matvecs);
        fail_convergence(buf);
    }
    std::vector<double> psi;
    apply_K(lr.vector, psi);
    est.value = std::sqrt(std::max(lr.value, 0.0));
    est.maximizer = AnyField(ScalarField(g, std::vector<cplx>(psi.begin(), psi.end())));
    est.iterations = lr.matvecs;
    return est;
}

double smallness_a_quotient(const Potential& V, const ScalarField& psi) {
    require_same_grid(V.grid(), psi.grid());
    require_nonzero(psi);
    const Grid& g = psi.grid();
    const double den = gradient_norm_sq(psi);
    require(den > 0.0, "undefined quotient: psi has no gradient");
    const auto m = abs_sq(psi);
    double num = 0.0;
    if (V.power) {
        num = std::abs(V.coefficient) * integrate_power(g, m, *V.power);
    } else {
        for (std::size_t i = 0; i < m.size(); ++i) num += std::abs(V.values[i]) * m[i];
        num *= g.cell_volume();
    }
    return num / den;
}

double lambda_condition_lhs(double Lambda, const LameParams& p, int d, double C) {
    require_elliptic(p);
    require(d >= 3, "the Lambda condition needs d >= 3");
    require(Lambda >= 0.0 && C >= 0.0, "Lambda and C must be non-negative");
    const double m = p.min_speed();
    const double dd = d;
    const double t1 = 4.0 * Lambda / m * dd * (2.0 * dd - 3.0) / (dd - 2.0) * (C + 1.0);
    const double t2 = 8.0 * std::pow(Lambda / m, 1.5) * std::pow(dd, 1.5) / std::sqrt(dd - 2.0) * std::pow(C + 1.0, 1.5);
    return t1 + t2;
}

ConstantEstimate estimate_regularity_constant(const Grid& g, double s, int trials, std::uint64_t seed) {
    const int d = g.dim();
    require(s > -d && s < d, "regularity exponent s must lie in (-d, d)");
    require(trials >= 1, "need at least one trial");

    // Fixed decaying family: gaussian bumps of several widths and offsets, plus
    // gradient and solenoidal bumps.
    const double L = g.half_width();
    std::vector<VectorField> family;
    const double h = g.spacing();
    for (double sigma : {L / 6.0, L / 12.0}) {
        if (sigma < h && sigma != L / 6.0) continue;
        for (int c = 1; c <= d; ++c) family.push_back(sample_catalog_field("gaussian_bump", {sigma, double(c)}, g));
        family.push_back(potential_bump(g, sigma));
        Point off{};
        off[0] = L / 4.0;
        family.push_back(potential_bump(g, sigma, off) + solenoidal_bump(g, sigma, off));
        if (d >= 2) family.push_back(solenoidal_bump(g, sigma) + cplx(0.5) * potential_bump(g, sigma, off));
    }

    const std::size_t total = static_cast<std::size_t>(trials) + family.size();
    std::vector<double> ratio(total, 0.0);
    parallel_for(total, [&](std::size_t t) {
        const VectorField f = t < static_cast<std::size_t>(trials)
                                  ? random_bandlimited_field(g, seed + 0x9e3779b97f4a7c15ull * (t + 1), false)
                                  : family[t - static_cast<std::size_t>(trials)];
        const double den = weighted_norm(f, s);
        if (den == 0.0) return;
        ratio[t] = weighted_norm(gradient_projection(f), s) / den;
    });

    std::size_t best = 0;
    for (std::size_t t = 1; t < total; ++t)
        if (ratio[t] > ratio[best]) best = t;

    ConstantEstimate est;
    est.method = "family_sup";
    est.resolution = describe(g);
    est.value = ratio[best];
    est.iterations = static_cast<int>(total);
    est.maximizer = AnyField(best < static_cast<std::size_t>(trials)
                                 ? random_bandlimited_field(g, seed + 0x9e3779b97f4a7c15ull * (best + 1), false)
                                 : family[best - static_cast<std::size_t>(trials)]);
    return est;
}

}  // namespace lamelab
