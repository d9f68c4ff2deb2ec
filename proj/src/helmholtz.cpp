#include "lamelab/helmholtz.hpp"

namespace lamelab {
namespace {

struct Split {
    std::vector<std::vector<cplx>> s_hat;
    std::vector<std::vector<cplx>> p_hat;
    std::vector<cplx> phi_hat;
};

Split split_modes(const VectorField& u) {
    const Grid& g = u.grid();
    const int d = g.dim();
    Split out;
    for (int a = 0; a < d; ++a) out.s_hat.push_back(to_fourier(u[a]));
    out.p_hat.assign(static_cast<std::size_t>(d), std::vector<cplx>(g.size()));
    out.phi_hat.assign(g.size(), 0.0);

    for_each_mode(g, [&](std::size_t i, const Point& xi) {
        double k2 = 0.0;
        cplx s = 0.0;
        for (int a = 0; a < d; ++a) {
            k2 += xi[a] * xi[a];
            s += xi[a] * out.s_hat[static_cast<std::size_t>(a)][i];
        }
        if (k2 == 0.0) return;
        for (int a = 0; a < d; ++a) {
            const cplx p = xi[a] * s / k2;
            out.p_hat[static_cast<std::size_t>(a)][i] = p;
            out.s_hat[static_cast<std::size_t>(a)][i] -= p;
        }
        out.phi_hat[i] = s / cplx(0.0, k2);
    });
    return out;
}

VectorField assemble(const Grid& g, std::vector<std::vector<cplx>>& hats) {
    std::vector<ScalarField> comps;
    for (auto& h : hats) comps.push_back(from_fourier(g, std::move(h)));
    return VectorField(g, std::move(comps));
}

}  // namespace

Decomposition decompose(const VectorField& u) {
    const Grid& g = u.grid();
    Split sp = split_modes(u);
    return Decomposition{assemble(g, sp.s_hat), assemble(g, sp.p_hat), from_fourier(g, std::move(sp.phi_hat))};
}

VectorField gradient_projection(const VectorField& u) {
    Split sp = split_modes(u);
    return assemble(u.grid(), sp.p_hat);
}

ScalarField potential_of_gradient(const VectorField& u_P) {
    Split sp = split_modes(u_P);
    const Grid& g = u_P.grid();
    const VectorField solenoidal = assemble(g, sp.s_hat);
    const double scale = l2_norm(u_P);
    require(l2_norm(solenoidal) <= 1e-8 * scale, "not a gradient field");
    return from_fourier(g, std::move(sp.phi_hat));
}

}  // namespace lamelab
