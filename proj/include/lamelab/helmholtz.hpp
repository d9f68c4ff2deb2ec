#pragma once

#include "lamelab/grid.hpp"

namespace lamelab {

/// u = u_S + u_P with div u_S = 0 and u_P = grad phi, phi of zero mean.
struct Decomposition {
    VectorField u_S;
    VectorField u_P;
    ScalarField phi;
};

/**
 * Fourier projection. For every mode with xi != 0 the gradient part is
 * (xi xi^T / |xi|^2) u_hat and phi_hat = xi . u_hat / (i |xi|^2). Modes with
 * xi = 0 (the constant mode, and modes whose wavenumber is Nyquist on every axis)
 * belong to u_S.
 */
Decomposition decompose(const VectorField& u);

/// The gradient part P u alone.
VectorField gradient_projection(const VectorField& u);

/// Zero-mean phi with grad phi = u_P. Fails with "not a gradient field" when
/// ||u_P - P u_P|| > 1e-8 ||u_P||.
ScalarField potential_of_gradient(const VectorField& u_P);

}  // namespace lamelab
