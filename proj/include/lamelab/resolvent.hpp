#pragma once

#include <vector>

#include "lamelab/krylov.hpp"
#include "lamelab/lame.hpp"

namespace lamelab {

struct ResolventOptions {
    double eta = 0.0;  // solve at k + i eta
    double residual_tol = 1e-8;
    GmresOptions gmres{1e-11, 80, 4000};
};

/**
 * u with Delta* u + k u - V u = f. V = 0 is solved exactly per Fourier mode; otherwise
 * GMRES right-preconditioned by the free resolvent at the same k. A k on the free
 * torus spectrum raises a Resonant error naming the mode.
 */
VectorField solve(const Grid& g, const LameParams& p, const Potential& V, cplx k, const VectorField& f,
                  const ResolventOptions& opt = {});

/// || Delta* u + k u - V u - f ||
double equation_residual(const VectorField& u, const VectorField& f, const LameParams& p, const Potential& V, cplx k);

struct AprioriReport {
    int branch = 1;  // 1: |k2| <= k1, 2: |k2| > k1
    double grad_uS_minus = 0.0;  // NaN when k1 < 0
    double grad_uP_minus = 0.0;
    double grad_u = 0.0;
    double x_f = 0.0;       // || |x| f ||
    double inv_x_u = 0.0;   // || |x|^{-1} u ||

    double ratio(double norm) const { return x_f > 0.0 ? norm / x_f : 0.0; }
};

/// Requires || Delta* u + k u - V u - f || <= 1e-6 ||f||.
AprioriReport apriori_report(const VectorField& u, const VectorField& f, cplx k, const LameParams& p,
                             const Potential& V);

struct SweepPoint {
    cplx k;
    double ratio = 0.0;       // || |x|^{-1} u || / || |x| f ||
    double grad_ratio = 0.0;  // || grad u || / || |x| f ||
    int branch = 1;
    bool skipped = false;
};

struct ResolventSweepResult {
    std::vector<SweepPoint> points;
    double sup_ratio = 0.0;
    cplx worst_k = 0.0;
};

/// Resonant points are skipped and recorded; fails when every point is skipped.
ResolventSweepResult sweep(const Grid& g, const LameParams& p, const Potential& V, const VectorField& f,
                           const std::vector<cplx>& k_grid, const ResolventOptions& opt = {});

/// Row-major rectangle of k values, real part varying fastest.
std::vector<cplx> k_rectangle(double re_min, double re_max, int n_re, double im_min, double im_max, int n_im);

}  // namespace lamelab
