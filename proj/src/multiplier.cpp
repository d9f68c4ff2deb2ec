#include "lamelab/multiplier.hpp"

#include <cmath>

#include "lamelab/radial_quadrature.hpp"

namespace lamelab {

Point RadialWeight::gradient(const Point& x, int d) const {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    const double r = std::sqrt(r2);
    const double s = psi1(r) / r;
    Point g{};
    for (int a = 0; a < d; ++a) g[a] = s * x[a];
    return g;
}

double RadialWeight::laplacian(double r, int d) const { return psi2(r) + (d - 1) * psi1(r) / r; }

double RadialWeight::hessian_form(const Point& x, const Point& v, int d) const {
    require(smooth, "weight '" + name + "' has no second derivatives at the origin");
    double r2 = 0.0, xv = 0.0, vv = 0.0;
    for (int a = 0; a < d; ++a) {
        r2 += x[a] * x[a];
        xv += x[a] * v[a];
        vv += v[a] * v[a];
    }
    const double r = std::sqrt(r2);
    const double radial = xv * xv / r2;
    return psi2(r) * radial + psi1(r) / r * (vv - radial);
}

double RadialWeight::bilaplacian(double r, int d) const {
    require(smooth, "weight '" + name + "' has no fourth derivatives at the origin");
    const double dm = d - 1.0;
    return psi4(r) + 2.0 * dm * psi3(r) / r + dm * (d - 3.0) * (psi2(r) / (r * r) - psi1(r) / (r * r * r));
}

RadialWeight quadratic_weight() {
    return {"quadratic",
            [](double r) { return r * r; },
            [](double r) { return 2.0 * r; },
            [](double) { return 2.0; },
            [](double) { return 0.0; },
            [](double) { return 0.0; },
            true,
            0.0};
}

RadialWeight linear_weight(double a) {
    return {"linear",
            [a](double r) { return a * r; },
            [a](double) { return a; },
            [](double) { return 0.0; },
            [](double) { return 0.0; },
            [](double) { return 0.0; },
            false,
            a};
}

RadialWeight constant_weight(double c) {
    auto zero = [](double) { return 0.0; };
    return {"constant", [c](double) { return c; }, zero, zero, zero, zero, true, 0.0};
}

RadialWeight gaussian_weight(double width) {
    require(width > 0.0, "gaussian weight width must be positive");
    const double a = 1.0 / (width * width);
    auto e = [a](double r) { return std::exp(-a * r * r); };
    return {"gaussian",
            e,
            [a, e](double r) { return -2.0 * a * r * e(r); },
            [a, e](double r) { return (4.0 * a * a * r * r - 2.0 * a) * e(r); },
            [a, e](double r) { return (-8.0 * a * a * a * r * r * r + 12.0 * a * a * r) * e(r); },
            [a, e](double r) {
                const double r2 = r * r;
                return (16.0 * a * a * a * a * r2 * r2 - 48.0 * a * a * a * r2 + 12.0 * a * a) * e(r);
            },
            true,
            0.0};
}

RadialWeight make_weight(const std::string& name, const std::vector<double>& params) {
    auto expect = [&](std::size_t n) {
        require(params.size() == n, "weight " + name + " expects " + std::to_string(n) + " parameters");
    };
    if (name == "quadratic") {
        expect(0);
        return quadratic_weight();
    }
    if (name == "linear" || name == "constant" || name == "gaussian") {
        expect(1);
        if (name == "linear") return linear_weight(params[0]);
        if (name == "constant") return constant_weight(params[0]);
        return gaussian_weight(params[0]);
    }
    fail("unknown weight '" + name + "'");
}

cplx IdentityReport::term(const std::string& n) const {
    for (const auto& [k, v] : terms)
        if (k == n) return v;
    fail("identity report has no term '" + n + "'");
}

// ---------------------------------------------------------------------------

namespace {

enum class Part { Phi, Laplacian };

void require_real(const VectorField& u) { require(u.is_real(), "identity checks need a real field u; complex u rejected"); }

// Nodal values sum_j a_j b_j (bilinear) and sum_j |a_j|^2.
std::vector<cplx> dot_values(const VectorField& a, const VectorField& b) {
    std::vector<cplx> v(a.grid().size(), 0.0);
    for (int c = 0; c < a.dim(); ++c)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += a[c][i] * b[c][i];
    return v;
}

std::vector<cplx> sq_values(const VectorField& a) {
    std::vector<cplx> v(a.grid().size(), 0.0);
    for (int c = 0; c < a.dim(); ++c)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += std::norm(a[c][i]);
    return v;
}

std::vector<cplx> jac_sq_values(const std::vector<VectorField>& jac) {
    std::vector<cplx> v(jac.front().grid().size(), 0.0);
    for (const auto& g : jac) {
        auto s = sq_values(g);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += s[i];
    }
    return v;
}

cplx nodal(const Grid& g, const std::vector<cplx>& v) {
    cplx s = 0.0;
    for (const auto& z : v) s += z;
    return s * g.cell_volume();
}

// int part(phi) * values
cplx weighted(const RadialWeight& w, Part part, const Grid& g, const std::vector<cplx>& v) {
    const int d = g.dim();
    if (!w.smooth) {
        const double a = w.linear_coefficient;
        if (part == Part::Phi) return a * integrate_power(g, v, 1.0);
        return a * (d - 1.0) * integrate_power(g, v, -1.0);
    }
    const auto radii = g.radii();
    cplx s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (part == Part::Phi ? w.value(radii[i]) : w.laplacian(radii[i], d)) * v[i];
    return s * g.cell_volume();
}

void validate_pair(const VectorField& u, const VectorField& f, double c, cplx k) {
    require_same_grid(u.grid(), f.grid());
    const VectorField lhs = cplx(c) * laplacian(u) + k * u;
    const double scale = l2_norm(lhs) + l2_norm(f);
    require(l2_norm(lhs - f) <= 1e-8 * std::max(scale, 1e-300) || scale == 0.0,
            "invalid pair: c lap u + k u != f");
}

IdentityReport finish(std::string name, cplx lhs, cplx rhs, std::vector<std::pair<std::string, cplx>> terms) {
    IdentityReport r;
    r.identity = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::abs(lhs - rhs);
    r.terms = std::move(terms);
    return r;
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

void require_branch(double c, cplx k) {
    require(c > 0.0, "speed c must be positive");
    require(k.real() >= 0.0, "twisted fields need k1 >= 0");
}

}  // namespace

ManufacturedPair manufacture_f(const VectorField& u, const LameParams& p, cplx k) {
    require_real(u);
    VectorField f = k * u - apply_lame(u, p);
    return ManufacturedPair{u, f, decompose(u), decompose(f)};
}

VectorField manufacture_component(const VectorField& u_c, double c, cplx k) {
    return cplx(c) * laplacian(u_c) + k * u_c;
}

IdentityReport identity_first(const VectorField& u, const VectorField& f, double c, cplx k, const RadialWeight& w,
                              const IdentityOptions& opt) {
    require_real(u);
    if (opt.validate) validate_pair(u, f, c, k);
    const Grid& g = u.grid();
    const auto m = sq_values(u);
    const auto gm = jac_sq_values(jacobian(u));
    const cplx A = weighted(w, Part::Phi, g, m);
    const cplx B = weighted(w, Part::Phi, g, gm);
    const cplx C = weighted(w, Part::Laplacian, g, m);
    const cplx uf = weighted(w, Part::Phi, g, dot_values(u, f));
    const double lhs = k.real() * A.real() - c * B.real() + 0.5 * c * C.real();
    const double rhs = uf.real();
    return finish("first", lhs, rhs,
                  {{"int phi |u|^2", A}, {"int phi |grad u|^2", B}, {"int lap phi |u|^2", C}, {"int phi u f", uf}});
}

IdentityReport identity_second(const VectorField& u, const VectorField& f, double c, cplx k, const RadialWeight& w,
                               const IdentityOptions& opt) {
    require_real(u);
    if (opt.validate) validate_pair(u, f, c, k);
    const Grid& g = u.grid();
    const cplx A = weighted(w, Part::Phi, g, sq_values(u));
    const cplx uf = weighted(w, Part::Phi, g, dot_values(u, f));
    return finish("second", k.imag() * A.real(), uf.imag(), {{"int phi |u|^2", A}, {"int phi u f", uf}});
}

IdentityReport identity_third(const VectorField& u, const VectorField& f, double c, cplx k, const RadialWeight& w,
                              const IdentityOptions& opt) {
    require_real(u);
    require(w.smooth, "identity_third needs a smooth weight");
    if (opt.validate) validate_pair(u, f, c, k);
    const Grid& g = u.grid();
    const int d = g.dim();
    const auto jac = jacobian(u);
    const auto radii = g.radii();

    double hess = 0.0, bilap = 0.0;
    cplx gradphi_f = 0.0, lapphi_uf = 0.0;
    for_each_node(g, [&](std::size_t i, const Point& x) {
        const double r = radii[i];
        const Point gp = w.gradient(x, d);
        const double lp = w.laplacian(r, d);
        double mass = 0.0;
        for (int j = 0; j < d; ++j) {
            Point v{};
            double gdot = 0.0;
            for (int a = 0; a < d; ++a) {
                v[a] = jac[static_cast<std::size_t>(j)][a][i].real();
                gdot += gp[a] * v[a];
            }
            hess += w.hessian_form(x, v, d);
            gradphi_f += gdot * f[j][i];
            lapphi_uf += lp * u[j][i] * f[j][i];
            mass += std::norm(u[j][i]);
        }
        bilap += w.bilaplacian(r, d) * mass;
    });
    const double hd = g.cell_volume();
    hess *= hd;
    bilap *= hd;
    gradphi_f *= hd;
    lapphi_uf *= hd;
    const double lhs = c * hess - 0.25 * c * bilap;
    const double rhs = -gradphi_f.real() - 0.5 * lapphi_uf.real();
    return finish("third", lhs, rhs,
                  {{"int grad u D2phi grad u", hess},
                   {"int lap^2 phi |u|^2", bilap},
                   {"int (grad phi . grad u) f", gradphi_f},
                   {"int lap phi u f", lapphi_uf}});
}

VectorField twisted_field(const VectorField& u, double c, cplx k) {
    require_branch(c, k);
    const double beta = std::sqrt(k.real()) * sgn(k.imag()) / std::sqrt(c);
    const Grid& g = u.grid();
    const auto radii = g.radii();
    std::vector<cplx> phase(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) phase[i] = std::sqrt(c) * std::polar(1.0, -beta * radii[i]);
    if (k.real() == 0.0) std::fill(phase.begin(), phase.end(), cplx(std::sqrt(c)));
    return ScalarField(g, std::move(phase)) * u;
}

std::vector<VectorField> twisted_jacobian(const VectorField& u, double c, cplx k) {
    require_branch(c, k);
    const double beta = std::sqrt(k.real()) * sgn(k.imag()) / std::sqrt(c);
    const Grid& g = u.grid();
    const int d = g.dim();
    const auto radii = g.radii();
    const auto jac = jacobian(u);
    std::vector<VectorField> out;
    for (int j = 0; j < d; ++j) {
        std::vector<std::vector<cplx>> comps(static_cast<std::size_t>(d), std::vector<cplx>(g.size()));
        for_each_node(g, [&](std::size_t i, const Point& x) {
            const cplx ph = std::sqrt(c) * std::polar(1.0, -beta * radii[i]);
            for (int a = 0; a < d; ++a)
                comps[static_cast<std::size_t>(a)][i] =
                    ph * (jac[static_cast<std::size_t>(j)][a][i] - cplx(0.0, beta) * (x[a] / radii[i]) * u[j][i]);
        });
        std::vector<ScalarField> sf;
        for (auto& v : comps) sf.emplace_back(g, std::move(v));
        out.emplace_back(g, std::move(sf));
    }
    return out;
}

IdentityReport identity_twisted_gradient(const VectorField& u, double c, cplx k) {
    require_real(u);
    const Grid& g = u.grid();
    const double lhs = nodal(g, jac_sq_values(twisted_jacobian(u, c, k))).real();
    const double grad = nodal(g, jac_sq_values(jacobian(u))).real();
    const double mass = nodal(g, sq_values(u)).real();
    return finish("twisted_gradient", lhs, c * grad + k.real() * mass,
                  {{"||grad u-||^2", lhs}, {"||grad u||^2", grad}, {"||u||^2", mass}});
}

IdentityReport identity_fund(const VectorField& u, const VectorField& f, double c, cplx k, const IdentityOptions& opt) {
    require_real(u);
    require(k.real() > 0.0, "identity_fund needs k1 > 0");
    require(std::abs(k.imag()) <= k.real(), "identity_fund needs |k2| <= k1");
    if (opt.validate) validate_pair(u, f, c, k);

    const Grid& g = u.grid();
    const int d = g.dim();
    const double k1 = k.real();
    const double kappa = std::abs(k.imag()) / std::sqrt(k1);
    const double beta = std::sqrt(k1) * sgn(k.imag()) / std::sqrt(c);
    const double sc = std::sqrt(c);

    const auto tw = jac_sq_values(twisted_jacobian(u, c, k));
    const double T1 = nodal(g, tw).real();
    const double T2 = kappa / sc * integrate_power(g, tw, 1.0).real();
    const double T3 = -sc * 0.5 * (d - 1) * kappa * integrate_power(g, sq_values(u), -1.0).real();

    const auto uf = dot_values(u, f);
    const auto jac = jacobian(u);
    std::vector<cplx> radial_f(g.size(), 0.0);
    for_each_node(g, [&](std::size_t i, const Point& x) {
        for (int j = 0; j < d; ++j) {
            cplx xr = 0.0;
            for (int a = 0; a < d; ++a) xr += x[a] * jac[static_cast<std::size_t>(j)][a][i];
            radial_f[i] += f[j][i] * xr;
        }
    });
    const cplx r_uf = integrate_power(g, uf, 1.0);
    const double I1 = (1.0 - d) * nodal(g, uf).real();
    const double I2 = -2.0 * nodal(g, radial_f).real() - 2.0 * (cplx(0.0, beta) * r_uf).real();
    const double I3 = -kappa / sc * r_uf.real();

    return finish("fund", T1 + T2 + T3, I1 + I2 + I3,
                  {{"I", T1 + T2 + T3}, {"I1", I1}, {"I2", I2}, {"I3", I3}, {"T1", T1}, {"T2", T2}, {"T3", T3}});
}

IdentityReport fund_from_components(const VectorField& u, const VectorField& f, double c, cplx k) {
    require(k.real() > 0.0, "needs k1 > 0");
    const double k1 = k.real();
    const double sk = std::sqrt(k1);
    const double a = std::abs(k.imag()) / (std::sqrt(c) * sk);
    const IdentityOptions raw{false};
    const auto first1 = identity_first(u, f, c, k, constant_weight(1.0), raw);
    const auto second = identity_second(u, f, c, k, linear_weight(2.0 * sgn(k.imag()) / std::sqrt(c)), raw);
    const auto third = identity_third(u, f, c, k, quadratic_weight(), raw);
    const auto firstA = identity_first(u, f, c, k, linear_weight(a), raw);
    const cplx lhs = first1.lhs + sk * second.lhs + third.lhs - firstA.lhs;
    const cplx rhs = first1.rhs + sk * second.rhs + third.rhs - firstA.rhs;
    return finish("fund_combination", lhs, rhs,
                  {{"first(1)", first1.lhs}, {"second", second.lhs}, {"third", third.lhs}, {"first(a|x|)", firstA.lhs}});
}

IdentityReport identity_energy(const VectorField& u, const VectorField& f, const LameParams& p, cplx k, int sign,
                               const IdentityOptions& opt) {
    require_real(u);
    require(sign == 1 || sign == -1, "sign must be +1 or -1");
    require_same_grid(u.grid(), f.grid());
    if (opt.validate) {
        const VectorField lhs = k * u - apply_lame(u, p);
        const double scale = l2_norm(lhs) + l2_norm(f);
        require(l2_norm(lhs - f) <= 1e-8 * std::max(scale, 1e-300) || scale == 0.0,
                "invalid pair: Delta* u + k u != f");
    }
    const Grid& g = u.grid();
    const double mass = nodal(g, sq_values(u)).real();
    const double grad = gradient_norm_sq(u);
    const double gradP = gradient_norm_sq(decompose(u).u_P);
    const cplx uf = nodal(g, dot_values(u, f));
    const double lhs = (k.real() + sign * k.imag()) * mass;
    const double rhs = p.mu * grad + (p.lambda + p.mu) * gradP + uf.real() + sign * uf.imag();
    return finish(sign > 0 ? "energy_plus" : "energy_minus", lhs, rhs,
                  {{"||u||^2", mass}, {"||grad u||^2", grad}, {"||grad u_P||^2", gradP}, {"int u f", uf}});
}

}  // namespace lamelab
