#include "lamelab/resolvent.hpp"

#include <cmath>
#include <cstdio>

#include "lamelab/helmholtz.hpp"
#include "lamelab/multiplier.hpp"
#include "lamelab/parallel.hpp"

namespace lamelab {

double equation_residual(const VectorField& u, const VectorField& f, const LameParams& p, const Potential& V, cplx k) {
    require_same_grid(u.grid(), f.grid());
    const LameOperator A(u.grid(), p, V);
    const auto x = u.flatten();
    std::vector<cplx> Ax(x.size());
    A.apply(x, Ax);
    const auto b = f.flatten();
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(-Ax[i] + k * x[i] - b[i]);
    return std::sqrt(s * u.grid().cell_volume());
}

VectorField solve(const Grid& g, const LameParams& p, const Potential& V, cplx k, const VectorField& f,
                  const ResolventOptions& opt) {
    require_same_grid(g, f.grid());
    const cplx z = k + cplx(0.0, opt.eta);
    const LameOperator A(g, p, V);
    const std::size_t N = A.dimension();
    std::vector<cplx> b = f.flatten();
    for (auto& v : b) v = -v;

    std::vector<cplx> x(N);
    if (V.is_zero()) {
        A.free_resolvent(z, b, x);
    } else {
        const LinearOp op = [&](std::span<const cplx> in, std::span<cplx> out) {
            A.apply(in, out);
            for (std::size_t i = 0; i < in.size(); ++i) out[i] -= z * in[i];
        };
        const LinearOp M = [&](std::span<const cplx> in, std::span<cplx> out) { A.free_resolvent(z, in, out); };
        const GmresResult r = gmres(op, &M, b, opt.gmres);
        if (!r.converged) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "resolvent GMRES stalled at k = %.6g%+.6gi: relative residual %.3e after %d iterations",
                          z.real(), z.imag(), r.rel_residual, r.iterations);
            fail_convergence(buf);
        }
        x = r.x;
    }
    VectorField u = VectorField::unflatten(g, x);
    const double fn = l2_norm(f);
    const double res = equation_residual(u, f, p, V, z);
    if (res > opt.residual_tol * fn) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "resolvent solve at k = %.6g%+.6gi missed tolerance: residual %.3e relative",
                      z.real(), z.imag(), fn > 0 ? res / fn : res);
        fail_convergence(buf);
    }
    return u;
}

AprioriReport apriori_report(const VectorField& u, const VectorField& f, cplx k, const LameParams& p,
                             const Potential& V) {
    const double fn = l2_norm(f);
    require(equation_residual(u, f, p, V, k) <= 1e-6 * fn || (fn == 0.0 && u.max_abs() == 0.0),
            "apriori_report: u does not solve the equation for (f, k)");
    AprioriReport r;
    r.branch = std::abs(k.imag()) <= k.real() ? 1 : 2;
    r.grad_u = std::sqrt(gradient_norm_sq(u));
    r.x_f = weighted_norm(f, 1.0);
    r.inv_x_u = weighted_norm(u, -1.0);
    if (k.real() >= 0.0) {
        const Decomposition dec = decompose(u);
        auto twisted_norm = [&](const VectorField& part, double c) {
            double s = 0.0;
            for (const auto& gj : twisted_jacobian(part, c, k)) s += std::pow(l2_norm(gj), 2);
            return std::sqrt(s);
        };
        r.grad_uS_minus = twisted_norm(dec.u_S, p.speed_S());
        r.grad_uP_minus = twisted_norm(dec.u_P, p.speed_P());
    } else {
        r.grad_uS_minus = r.grad_uP_minus = std::nan("");
    }
    return r;
}

ResolventSweepResult sweep(const Grid& g, const LameParams& p, const Potential& V, const VectorField& f,
                           const std::vector<cplx>& k_grid, const ResolventOptions& opt) {
    require(!k_grid.empty(), "empty k grid");
    ResolventSweepResult out;
    out.points.resize(k_grid.size());
    const double xf = weighted_norm(f, 1.0);
    parallel_for(k_grid.size(), [&](std::size_t i) {
        SweepPoint& pt = out.points[i];
        pt.k = k_grid[i];
        pt.branch = std::abs(pt.k.imag()) <= pt.k.real() ? 1 : 2;
        try {
            const VectorField u = solve(g, p, V, pt.k, f, opt);
            pt.ratio = xf > 0.0 ? weighted_norm(u, -1.0) / xf : 0.0;
            pt.grad_ratio = xf > 0.0 ? std::sqrt(gradient_norm_sq(u)) / xf : 0.0;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Resonant) throw;
            pt.skipped = true;
        }
    });
    bool any = false;
    for (const auto& pt : out.points) {
        if (pt.skipped) continue;
        if (!any || pt.ratio > out.sup_ratio) {
            out.sup_ratio = pt.ratio;
            out.worst_k = pt.k;
        }
        any = true;
    }
    if (!any) fail("empty sweep: every k point is resonant");
    return out;
}

std::vector<cplx> k_rectangle(double re_min, double re_max, int n_re, double im_min, double im_max, int n_im) {
    require(n_re >= 1 && n_im >= 1, "k grid needs at least one point per direction");
    auto at = [](double a, double b, int n, int i) { return n == 1 ? a : a + (b - a) * i / (n - 1); };
    std::vector<cplx> ks;
    for (int j = 0; j < n_im; ++j)
        for (int i = 0; i < n_re; ++i) ks.emplace_back(at(re_min, re_max, n_re, i), at(im_min, im_max, n_im, j));
    return ks;
}

}  // namespace lamelab
