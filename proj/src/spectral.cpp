#include "lamelab/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace lamelab {

LameOperator assemble(const Grid& g, const LameParams& p, const Potential& V) { return LameOperator(g, p, V); }

double localization_score(const Grid& g, std::span<const cplx> flat) {
    const std::size_t N = g.size();
    require(flat.size() % N == 0, "vector length does not match the grid");
    const auto radii = g.radii();
    const double R = 0.5 * g.half_width();
    double inside = 0.0, total = 0.0;
    for (std::size_t k = 0; k < flat.size(); ++k) {
        const double m = std::norm(flat[k]);
        total += m;
        if (radii[k % N] <= R) inside += m;
    }
    require(total > 0.0, "localization of a zero vector is undefined");
    return inside / total;
}

double localization_score(const VectorField& v) {
    const auto flat = v.flatten();
    return localization_score(v.grid(), flat);
}

namespace {

double pair_residual(const LameOperator& A, cplx lambda, std::span<const cplx> v) {
    std::vector<cplx> Av(v.size());
    A.apply(v, Av);
    for (std::size_t i = 0; i < v.size(); ++i) Av[i] -= lambda * v[i];
    return norm2(Av) / norm2(v);
}

std::vector<std::size_t> nearest_order(const std::vector<cplx>& vals, cplx shift) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double da = std::abs(vals[a] - shift);
        const double db = std::abs(vals[b] - shift);
        if (da != db) return da < db;
        if (vals[a].real() != vals[b].real()) return vals[a].real() < vals[b].real();
        return vals[a].imag() < vals[b].imag();
    });
    return order;
}

void dense_spectrum(const LameOperator& A, int n_eigs, cplx shift, SpectralReport& rep, double tol) {
    const std::size_t N = A.dimension();
    std::vector<cplx> M(N * N);
    std::vector<cplx> e(N, 0.0);
    for (std::size_t j = 0; j < N; ++j) {
        e[j] = 1.0;
        A.apply(e, std::span<cplx>(M.data() + j * N, N));
        e[j] = 0.0;
    }
    std::vector<cplx> w(N), vr(N * N);
    const lapack_int n = static_cast<lapack_int>(N);
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, reinterpret_cast<lapack_complex_double*>(M.data()), n,
                                          reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                                          reinterpret_cast<lapack_complex_double*>(vr.data()), n);
    if (info != 0) fail_convergence("dense eigensolver failed (zgeev info " + std::to_string(info) + ")");

    const auto order = nearest_order(w, shift);
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(n_eigs), N);
    for (std::size_t t = 0; t < count; ++t) {
        const std::size_t j = order[t];
        std::span<const cplx> v(vr.data() + j * N, N);
        const double r = pair_residual(A, w[j], v);
        if (r > tol) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "dense eigenpair residual %.3e exceeds %.1e", r, tol);
            fail_convergence(buf);
        }
        rep.eigenvalues.push_back(w[j]);
        rep.localization.push_back(localization_score(A.grid(), v));
        rep.residual.push_back(r);
    }
}

void iterative_spectrum(const LameOperator& A, int n_eigs, cplx shift, SpectralReport& rep, const SpectralOptions& opt) {
    const std::size_t N = A.dimension();
    auto shifted = [&](cplx s) {
        return LinearOp([&A, s](std::span<const cplx> x, std::span<cplx> y) {
            A.apply(x, y);
            for (std::size_t i = 0; i < x.size(); ++i) y[i] -= s * x[i];
        });
    };
    auto precond = [&](cplx s) {
        return LinearOp([&A, s](std::span<const cplx> x, std::span<cplx> y) { A.free_resolvent(s, x, y); });
    };
    auto solve = [&](cplx s, std::span<const cplx> b, std::span<cplx> x, bool strict) {
        const LinearOp op = shifted(s);
        const LinearOp M = precond(s);
        const GmresResult r = gmres(op, &M, b, opt.inner);
        if (strict && !r.converged) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "inner GMRES solve stalled at relative residual %.3e after %d iterations",
                          r.rel_residual, r.iterations);
            fail_convergence(buf);
        }
        std::copy(r.x.begin(), r.x.end(), x.begin());
    };

    const LinearOp T = [&](std::span<const cplx> x, std::span<cplx> y) { solve(shift, x, y, true); };
    const auto pairs = arnoldi_largest(T, N, n_eigs, opt.arnoldi);

    std::vector<cplx> vals;
    std::vector<std::vector<cplx>> vecs;
    for (const auto& pr : pairs) {
        std::vector<cplx> v = pr.vector;
        std::vector<cplx> Av(N);
        A.apply(v, Av);
        cplx lambda = dot(v, Av) / dot(v, v);
        double r = pair_residual(A, lambda, v);
        // Polish by inverse iteration: first at the shift, where the inner solve is
        // cheap, then at the Rayleigh quotient. Near a torus resonance the free
        // preconditioner at the Rayleigh quotient is nearly singular and slow.
        for (int step = 0; step < 8 && r > opt.residual_tol; ++step) {
            std::vector<cplx> w(N);
            if (step < 4) {
                solve(shift, v, w, false);
            } else {
                try {
                    solve(lambda, v, w, false);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::Resonant) throw;
                    solve(shift, v, w, false);
                }
            }
            const double wn = norm2(w);
            for (auto& z : w) z /= wn;
            v = std::move(w);
            A.apply(v, Av);
            lambda = dot(v, Av);
            r = pair_residual(A, lambda, v);
        }
        if (r > opt.residual_tol) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "eigenpair near %.6g%+.6gi reached residual %.3e, above %.1e",
                          lambda.real(), lambda.imag(), r, opt.residual_tol);
            fail_convergence(buf);
        }
        vals.push_back(lambda);
        vecs.push_back(std::move(v));
    }
    for (std::size_t j : nearest_order(vals, shift)) {
        rep.eigenvalues.push_back(vals[j]);
        rep.localization.push_back(localization_score(A.grid(), vecs[j]));
        rep.residual.push_back(pair_residual(A, vals[j], vecs[j]));
    }
}

}  // namespace

SpectralReport compute_spectrum(const LameOperator& A, int n_eigs, cplx shift, const SpectralOptions& opt) {
    require(n_eigs >= 1, "n_eigs must be at least 1");
    const Grid& g = A.grid();
    SpectralReport rep;
    rep.d = g.dim();
    rep.n = g.points();
    rep.L = g.half_width();
    rep.shift = shift;
    if (A.dimension() <= opt.dense_limit) {
        rep.method = "dense";
        dense_spectrum(A, n_eigs, shift, rep, opt.residual_tol);
    } else {
        rep.method = "shift_invert";
        iterative_spectrum(A, n_eigs, shift, rep, opt);
    }
    rep.drift.assign(rep.eigenvalues.size(), std::nan(""));
    rep.candidate.assign(rep.eigenvalues.size(), false);
    return rep;
}

SpectralReport classify_point_spectrum(const SpectralReport& a, const SpectralReport& b, const ClassifyOptions& opt) {
    SpectralReport out = a;
    out.candidates.clear();
    out.drift.assign(a.eigenvalues.size(), std::nan(""));
    out.candidate.assign(a.eigenvalues.size(), false);
    if (a.eigenvalues.empty() || b.eigenvalues.empty()) return out;

    require(a.d == b.d, "incompatible reports: dimensions differ");
    require(b.L > a.L, "incompatible reports: the second report must use the larger box");
    const double ha = 2.0 * a.L / a.n;
    const double hb = 2.0 * b.L / b.n;
    require(ha / hb >= 0.5 && ha / hb <= 2.0, "incompatible reports: grid spacings are not comparable");

    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < b.eigenvalues.size(); ++j)
            if (std::abs(b.eigenvalues[j] - a.eigenvalues[i]) < std::abs(b.eigenvalues[best] - a.eigenvalues[i])) best = j;
        const double drift = std::abs(b.eigenvalues[best] - a.eigenvalues[i]) /
                             std::max(std::abs(a.eigenvalues[i]), opt.drift_floor);
        out.drift[i] = drift;
        const bool cand = drift <= opt.drift_tol && a.localization[i] > opt.localization_min &&
                          b.localization[best] > opt.localization_min;
        out.candidate[i] = cand;
        if (cand) out.candidates.push_back(a.eigenvalues[i]);
    }
    return out;
}

}  // namespace lamelab
