#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lamelab/grid.hpp"

namespace lamelab {

struct LameParams {
    double mu = 1.0;
    double lambda = 0.0;

    double speed_S() const { return mu; }
    double speed_P() const { return lambda + 2.0 * mu; }
    double min_speed() const { return std::min(speed_S(), speed_P()); }
    /// mu > 0 and lambda > -(2/3) mu.
    bool positive() const { return mu > 0.0 && lambda > -(2.0 / 3.0) * mu; }
    /// mu > 0 and lambda + 2 mu > 0.
    bool elliptic() const { return mu > 0.0 && speed_P() > 0.0; }
};

struct CoefficientCheck {
    bool positivity;
    bool ellipticity;
};

CoefficientCheck check_coefficients(const LameParams& p);
void require_elliptic(const LameParams& p);

/**
 * Multiplication by V(x), applied to every component.
 *
 *   zero            []
 *   constant        [re, im]
 *   gaussian        [re, im, width]   (re + i im) exp(-|x|^2 / width^2)
 *   inverse_square  [re, im]          (re + i im) / |x|^2
 *
 * For pure powers, `power` and `coefficient` record V = coefficient |x|^power so
 * that integrals against |V| can use the corrected radial quadrature.
 */
struct Potential {
    ScalarField values;
    std::string name;
    std::vector<double> params;
    std::optional<double> power;
    cplx coefficient = 0.0;

    bool is_zero() const { return name == "zero"; }
    const Grid& grid() const { return values.grid(); }
    double min_real() const;
};

Potential make_potential(const std::string& name, const std::vector<double>& params, const Grid& g);
Potential scaled(const Potential& V, cplx c);

/// -mu lap u - (lambda + mu) grad div u, built from the grid calculus.
VectorField apply_lame(const VectorField& u, const LameParams& p);
/// -mu lap u_S - (lambda + 2 mu) lap u_P through the Helmholtz decomposition.
VectorField apply_lame_helmholtz(const VectorField& u, const LameParams& p);
/// mu ||grad u_S||^2 + (lambda + 2 mu) ||grad u_P||^2.
double quadratic_form(const VectorField& u, const LameParams& p);
/// apply_lame_helmholtz(u) + V u.
VectorField apply_perturbed(const VectorField& u, const LameParams& p, const Potential& V);

/**
 * Matrix-free form on flattened component-major vectors, used by the solvers.
 * Per Fourier mode the operator is mu |xi|^2 (I - P) + (lambda + 2 mu) |xi|^2 P
 * plus V; the free resolvent divides by the two shifted symbols.
 */
class LameOperator {
public:
    LameOperator(const Grid& g, const LameParams& p, const Potential& V);

    const Grid& grid() const { return grid_; }
    const LameParams& params() const { return params_; }
    const Potential& potential() const { return V_; }
    std::size_t dimension() const { return grid_.size() * static_cast<std::size_t>(grid_.dim()); }

    /// y = (-Delta* + V) x
    void apply(std::span<const cplx> x, std::span<cplx> y) const;
    /// y = (-Delta* - z)^{-1} x, free part only. Throws Resonant when a mode symbol
    /// minus z is negligible relative to the largest one.
    void free_resolvent(cplx z, std::span<const cplx> x, std::span<cplx> y) const;
    /// Mode index with the smallest |symbol - z| and its distance, for diagnostics.
    std::pair<std::size_t, double> nearest_mode(cplx z) const;

private:
    template <class Symbol>
    void fourier_apply(std::span<const cplx> x, std::span<cplx> y, Symbol&& sym) const;

    Grid grid_;
    LameParams params_;
    Potential V_;
    std::vector<double> k2_;
    std::vector<std::array<double, kMaxDim>> xi_;
};

}  // namespace lamelab
