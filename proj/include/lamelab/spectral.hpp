#pragma once

#include <string>
#include <vector>

#include "lamelab/krylov.hpp"
#include "lamelab/lame.hpp"

namespace lamelab {

LameOperator assemble(const Grid& g, const LameParams& p, const Potential& V);

struct SpectralOptions {
    std::size_t dense_limit = 6000;  // N = d n^d at or below this uses a dense eigensolver
    double residual_tol = 1e-8;      // ||A v - lambda v|| <= tol ||v||
    SubspaceOptions arnoldi{};
    GmresOptions inner{1e-12, 80, 4000};
};

struct SpectralReport {
    int d = 0;
    int n = 0;
    double L = 0.0;
    cplx shift = 0.0;
    std::string method;  // "dense" or "shift_invert"
    std::vector<cplx> eigenvalues;
    std::vector<double> localization;
    std::vector<double> residual;
    std::vector<double> drift;   // filled by classify_point_spectrum
    std::vector<bool> candidate; // filled by classify_point_spectrum
    std::vector<cplx> candidates;
};

/// The n_eigs eigenvalues nearest `shift`, ordered by distance, with localization
/// scores. Every pair is re-verified through the matrix-free apply.
SpectralReport compute_spectrum(const LameOperator& A, int n_eigs, cplx shift, const SpectralOptions& opt = {});

/// Fraction of the squared mass of v inside |x| <= L/2.
double localization_score(const VectorField& v);
double localization_score(const Grid& g, std::span<const cplx> flat);

struct ClassifyOptions {
    double drift_tol = 1e-2;
    double drift_floor = 1e-3;  // |lambda| below this is compared in absolute terms
    double localization_min = 0.5;
};

/// Candidates: eigenvalues of report_L matched in report_2L within relative drift
/// drift_tol and localized above localization_min in both.
SpectralReport classify_point_spectrum(const SpectralReport& report_L, const SpectralReport& report_2L,
                                       const ClassifyOptions& opt = {});

}  // namespace lamelab
