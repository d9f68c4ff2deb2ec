#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lamelab/grid.hpp"
#include "lamelab/helmholtz.hpp"
#include "lamelab/lame.hpp"

namespace lamelab {

/**
 * Radial multiplier phi(x) = psi(|x|) with analytic derivatives of psi up to order four.
 *
 *   grad phi   = psi' x / r
 *   lap phi    = psi'' + (d - 1) psi' / r
 *   D^2 phi    = psi'' xx^T / r^2 + (psi' / r)(I - xx^T / r^2)
 *   lap^2 phi  = psi'''' + 2(d - 1) psi''' / r + (d - 1)(d - 3)(psi'' / r^2 - psi' / r^3)
 *
 * The linear weight a|x| is not smooth at the origin. Its integrals against phi and
 * lap phi = a (d - 1) / |x| go through the corrected radial quadrature, and it is
 * rejected where second derivatives are needed.
 */
struct RadialWeight {
    std::string name;
    std::function<double(double)> psi, psi1, psi2, psi3, psi4;
    bool smooth = true;
    double linear_coefficient = 0.0;  // a, for the linear weight only

    double value(double r) const { return psi(r); }
    Point gradient(const Point& x, int d) const;
    double laplacian(double r, int d) const;
    /// v^T D^2 phi(x) v for a real vector v.
    double hessian_form(const Point& x, const Point& v, int d) const;
    double bilaplacian(double r, int d) const;
};

RadialWeight quadratic_weight();                // |x|^2
RadialWeight linear_weight(double a);           // a |x|
RadialWeight constant_weight(double c);         // c
RadialWeight gaussian_weight(double width);     // exp(-|x|^2 / width^2)
RadialWeight make_weight(const std::string& name, const std::vector<double>& params);

struct IdentityReport {
    std::string identity;
    cplx lhs = 0.0;
    cplx rhs = 0.0;
    double residual = 0.0;
    std::vector<std::pair<std::string, cplx>> terms;

    double scale() const { return std::abs(lhs) + std::abs(rhs); }
    cplx term(const std::string& name) const;
};

/// f = -apply_lame(u) + k u together with the Helmholtz parts of u and f.
struct ManufacturedPair {
    VectorField u;
    VectorField f;
    Decomposition u_parts;
    Decomposition f_parts;
};

ManufacturedPair manufacture_f(const VectorField& u, const LameParams& p, cplx k);

/// f_c = c lap u_c + k u_c.
VectorField manufacture_component(const VectorField& u_c, double c, cplx k);

/**
 * Every identity requires real u. When `validate` is set, the pair must satisfy its
 * equation to 1e-8 relative or the call fails with "invalid pair".
 *
 * Pairings: int phi u f means the bilinear sum phi * sum_j u_j f_j without conjugation,
 * the convention under which the manufactured residuals vanish.
 */
struct IdentityOptions {
    bool validate = true;
};

IdentityReport identity_first(const VectorField& u, const VectorField& f, double c, cplx k, const RadialWeight& w,
                              const IdentityOptions& opt = {});
IdentityReport identity_second(const VectorField& u, const VectorField& f, double c, cplx k, const RadialWeight& w,
                               const IdentityOptions& opt = {});
IdentityReport identity_third(const VectorField& u, const VectorField& f, double c, cplx k, const RadialWeight& w,
                              const IdentityOptions& opt = {});

/// sqrt(c) exp(-i beta |x|) u with beta = k1^{1/2} sgn(k2) / sqrt(c), sgn(0) = +1.
VectorField twisted_field(const VectorField& u, double c, cplx k);
/// Gradients of every twisted component by the product rule:
/// sqrt(c) exp(-i beta |x|) (grad u_j - i beta x/|x| u_j).
std::vector<VectorField> twisted_jacobian(const VectorField& u, double c, cplx k);

IdentityReport identity_twisted_gradient(const VectorField& u, double c, cplx k);
IdentityReport identity_fund(const VectorField& u, const VectorField& f, double c, cplx k,
                             const IdentityOptions& opt = {});
/// first(1) + k1^{1/2} second(2 sgn(k2) |x| / sqrt(c)) + third(|x|^2) - first(|k2| |x| / (sqrt(c) k1^{1/2})).
IdentityReport fund_from_components(const VectorField& u, const VectorField& f, double c, cplx k);

/// (k1 + sign k2) ||u||^2 = mu ||grad u||^2 + (lambda + mu) ||grad u_P||^2 + Re int u f + sign Im int u f.
IdentityReport identity_energy(const VectorField& u, const VectorField& f, const LameParams& p, cplx k, int sign,
                               const IdentityOptions& opt = {});

}  // namespace lamelab
