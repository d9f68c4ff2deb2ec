#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lamelab/grid.hpp"

namespace lamelab {

/**
 * Quadrature weights q with sum_j q_j g(x_j) ~ integral of |x|^alpha g(x) over R^d,
 * for g smooth and decaying inside the box.
 *
 * Even non-negative integer powers are smooth and use the nodal rule h^d |x_j|^alpha.
 * Other powers are split with a radial cutoff chi: (1 - chi)|x|^alpha goes to the
 * nodal rule and chi |x|^alpha is integrated exactly against the trigonometric
 * interpolant of g, through its radial Fourier transform.
 *
 * Requires alpha > -d. Results are cached per (grid, alpha) and shared.
 */
std::shared_ptr<const std::vector<double>> power_weights(const Grid& g, double alpha);

/// sum_j q_j values_j with q = power_weights(g, alpha).
double integrate_power(const Grid& g, std::span<const double> values, double alpha);
cplx integrate_power(const Grid& g, std::span<const cplx> values, double alpha);

/// Radial Fourier transform of chi(r) r^alpha in dimension d at wavenumber rho,
/// chi(r) = exp(-(r / (0.75 L))^8). Exposed for testing.
double cutoff_power_transform(int d, double L, double alpha, double rho);

}  // namespace lamelab
