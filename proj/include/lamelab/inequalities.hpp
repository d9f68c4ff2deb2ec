#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lamelab/grid.hpp"
#include "lamelab/krylov.hpp"
#include "lamelab/lame.hpp"

namespace lamelab {

struct ConstantEstimate {
    double value = 0.0;
    std::optional<AnyField> maximizer;
    std::string method;      // "generalized_eig" or "family_sup"
    std::string resolution;  // "d=3 n=64 L=16"
    int iterations = 0;
};

std::string describe(const Grid& g);

/**
 * classical: (int |psi|^2 / |x|^2) / (int |grad psi|^2), needs d >= 3.
 * weighted:  (int |psi|^2 / |x|) / (int |x| |grad psi|^2), needs d >= 2.
 * The singular weights use the corrected radial quadrature.
 */
double hardy_quotient(const ScalarField& psi, bool weighted);

/// Sharp continuum constants 4/(d-2)^2 and 4/(d-1)^2.
double hardy_constant(int d, bool weighted);

/**
 * Smallest Lambda with int |x|^2 |V|^2 |psi|^2 <= Lambda^2 int |grad psi|^2 on the grid:
 * the square root of the top eigenvalue of K W K, K = (-lap)^{-1/2} on zero-mean fields,
 * W = |x|^2 |V|^2 at the nodes. The maximizer is the corresponding psi.
 */
ConstantEstimate estimate_lambda(const Potential& V, const LanczosOptions& opt = {});

/// (int |V| |psi|^2) / (int |grad psi|^2).
double smallness_a_quotient(const Potential& V, const ScalarField& psi);

/// 4 Lambda / m * d (2d - 3) / (d - 2) * (C + 1) + 8 Lambda^{3/2} / m^{3/2} * d^{3/2} / sqrt(d - 2) * (C + 1)^{3/2},
/// m = min(mu, lambda + 2 mu). The condition holds iff the result is below 1.
double lambda_condition_lhs(double Lambda, const LameParams& p, int d, double C);

/**
 * sup over trial f of || |x|^s P f || / || |x|^s f ||, P the gradient-part projector
 * (grad psi = P f solves lap psi = div f). Trials are `trials` random band-limited
 * fields plus a fixed set of decaying catalog fields.
 */
ConstantEstimate estimate_regularity_constant(const Grid& g, double s, int trials, std::uint64_t seed);

}  // namespace lamelab
