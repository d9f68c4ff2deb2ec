#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lamelab/grid.hpp"

namespace lamelab {

/**
 * Analytic vector fields sampled at the grid nodes. Axis and component indices
 * in params are 1-based.
 *
 *   gaussian_bump   [sigma, component]        exp(-|x|^2 / (2 sigma^2)) e_component, sigma <= L/6
 *   divfree_mode    [axis, component, m]      sin(m pi x_axis / L) e_component, axis != component
 *   gradient_mode   [axis, m]                 grad cos(m pi x_axis / L)
 *   plane_mode      [axis, component, m]      exp(i m pi x_axis / L) e_component
 *   hardy_optimizer [eps, component]          |x|^{-(d-2)/2 + eps} cut off smoothly between L/4 and L/2
 */
VectorField sample_catalog_field(const std::string& name, const std::vector<double>& params, const Grid& g);

/// Smooth radial step: 1 for r <= a, 0 for r >= b.
double smooth_cutoff(double r, double a, double b);

/// Divergence-free decaying field (-d_2 G, d_1 G, 0, ...) with G = exp(-|x - x0|^2 / (2 sigma^2)).
VectorField solenoidal_bump(const Grid& g, double sigma, const Point& center = Point{});
/// Decaying gradient field grad G with G as above.
VectorField potential_bump(const Grid& g, double sigma, const Point& center = Point{});

/// Random field whose Fourier support is |m_a| < n/4 on every axis (Nyquist content is zero).
VectorField random_bandlimited_field(const Grid& g, std::uint64_t seed, bool real_valued);
ScalarField random_bandlimited_scalar(const Grid& g, std::uint64_t seed, bool real_valued);

}  // namespace lamelab
