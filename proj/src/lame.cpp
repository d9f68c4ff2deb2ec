#include "lamelab/lame.hpp"

#include <cmath>
#include <cstdio>

#include "lamelab/helmholtz.hpp"

namespace lamelab {

CoefficientCheck check_coefficients(const LameParams& p) { return {p.positive(), p.elliptic()}; }

void require_elliptic(const LameParams& p) {
    require(p.elliptic(), "Lame coefficients are not elliptic (need mu > 0 and lambda + 2 mu > 0)");
}

double Potential::min_real() const {
    double m = 0.0;
    for (const auto& z : values.values()) m = std::min(m, z.real());
    return m;
}

Potential make_potential(const std::string& name, const std::vector<double>& params, const Grid& g) {
    auto expect = [&](std::size_t count) {
        require(params.size() == count, "potential " + name + " expects " + std::to_string(count) + " parameters");
    };
    Potential V{ScalarField::zeros(g), name, params, std::nullopt, 0.0};
    const int d = g.dim();
    auto r2_of = [d](const Point& x) {
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
        return r2;
    };
    if (name == "zero") {
        expect(0);
        V.power = 0.0;
    } else if (name == "constant") {
        expect(2);
        V.coefficient = cplx(params[0], params[1]);
        V.power = 0.0;
        V.values = ScalarField::constant(g, V.coefficient);
    } else if (name == "gaussian") {
        expect(3);
        require(params[2] > 0.0, "gaussian potential width must be positive");
        const cplx c(params[0], params[1]);
        const double w2 = params[2] * params[2];
        V.values = ScalarField::sample(g, [&](const Point& x) { return c * std::exp(-r2_of(x) / w2); });
    } else if (name == "inverse_square") {
        expect(2);
        V.coefficient = cplx(params[0], params[1]);
        V.power = -2.0;
        V.values = ScalarField::sample(g, [&](const Point& x) { return V.coefficient / r2_of(x); });
    } else {
        fail("unknown potential '" + name + "'");
    }
    return V;
}

Potential scaled(const Potential& V, cplx c) {
    Potential out = V;
    out.values = c * V.values;
    out.coefficient = c * V.coefficient;
    std::vector<double> p = V.params;
    if (p.size() >= 2) {
        const cplx z = c * cplx(p[0], p[1]);
        p[0] = z.real();
        p[1] = z.imag();
    }
    out.params = p;
    return out;
}

VectorField apply_lame(const VectorField& u, const LameParams& p) {
    require_elliptic(p);
    const VectorField lap = laplacian(u);
    const VectorField graddiv = gradient(divergence(u));
    return cplx(-p.mu) * lap - cplx(p.lambda + p.mu) * graddiv;
}

VectorField apply_lame_helmholtz(const VectorField& u, const LameParams& p) {
    require_elliptic(p);
    const Decomposition dec = decompose(u);
    return cplx(-p.speed_S()) * laplacian(dec.u_S) - cplx(p.speed_P()) * laplacian(dec.u_P);
}

double quadratic_form(const VectorField& u, const LameParams& p) {
    require_elliptic(p);
    const Decomposition dec = decompose(u);
    return p.speed_S() * gradient_norm_sq(dec.u_S) + p.speed_P() * gradient_norm_sq(dec.u_P);
}

VectorField apply_perturbed(const VectorField& u, const LameParams& p, const Potential& V) {
    require_same_grid(u.grid(), V.grid());
    return apply_lame_helmholtz(u, p) + V.values * u;
}

// ---------------------------------------------------------------------------

LameOperator::LameOperator(const Grid& g, const LameParams& p, const Potential& V)
    : grid_(g), params_(p), V_(V) {
    require_elliptic(p);
    require_same_grid(g, V.grid());
    k2_.resize(g.size());
    xi_.resize(g.size());
    for_each_mode(g, [&](std::size_t i, const Point& xi) {
        double k2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) k2 += xi[a] * xi[a];
        k2_[i] = k2;
        xi_[i] = xi;
    });
}

// Applies mu-type symbol sym(k2) = (s_S, s_P) per mode: y_hat = s_S (I - P) x_hat + s_P P x_hat.
template <class Symbol>
void LameOperator::fourier_apply(std::span<const cplx> x, std::span<cplx> y, Symbol&& sym) const {
    const int d = grid_.dim();
    const int n = grid_.points();
    const std::size_t N = grid_.size();
    std::vector<cplx> buf(x.begin(), x.end());
    for (int a = 0; a < d; ++a) fourier::forward(std::span<cplx>(buf).subspan(N * static_cast<std::size_t>(a), N), d, n);

    std::array<cplx, kMaxDim> v{};
    for (std::size_t i = 0; i < N; ++i) {
        const auto [sS, sP] = sym(k2_[i]);
        const double k2 = k2_[i];
        cplx s = 0.0;
        for (int a = 0; a < d; ++a) {
            v[a] = buf[N * static_cast<std::size_t>(a) + i];
            s += xi_[i][a] * v[a];
        }
        for (int a = 0; a < d; ++a) {
            const cplx pa = k2 > 0.0 ? xi_[i][a] * s / k2 : cplx(0.0);
            buf[N * static_cast<std::size_t>(a) + i] = sS * (v[a] - pa) + sP * pa;
        }
    }
    for (int a = 0; a < d; ++a) fourier::inverse(std::span<cplx>(buf).subspan(N * static_cast<std::size_t>(a), N), d, n);
    std::copy(buf.begin(), buf.end(), y.begin());
}

void LameOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
    require(x.size() == dimension() && y.size() == dimension(), "operator vector length mismatch");
    const double cS = params_.speed_S();
    const double cP = params_.speed_P();
    fourier_apply(x, y, [&](double k2) { return std::pair<cplx, cplx>(cS * k2, cP * k2); });
    if (V_.is_zero()) return;
    const std::size_t N = grid_.size();
    const auto vals = V_.values.values();
    for (int a = 0; a < grid_.dim(); ++a)
        for (std::size_t i = 0; i < N; ++i) y[N * static_cast<std::size_t>(a) + i] += vals[i] * x[N * static_cast<std::size_t>(a) + i];
}

std::pair<std::size_t, double> LameOperator::nearest_mode(cplx z) const {
    const double cS = params_.speed_S();
    const double cP = params_.speed_P();
    std::size_t best = 0;
    double dist = std::abs(z);
    for (std::size_t i = 0; i < k2_.size(); ++i) {
        // In one dimension every nonzero mode is a pure gradient.
        const bool has_S = grid_.dim() > 1 || k2_[i] == 0.0;
        const bool has_P = k2_[i] > 0.0;
        double m = dist;
        if (has_S) m = std::min(m, std::abs(cS * k2_[i] - z));
        if (has_P) m = std::min(m, std::abs(cP * k2_[i] - z));
        if (m < dist) {
            dist = m;
            best = i;
        }
    }
    return {best, dist};
}

void LameOperator::free_resolvent(cplx z, std::span<const cplx> x, std::span<cplx> y) const {
    const double cS = params_.speed_S();
    const double cP = params_.speed_P();
    double kmax = 0.0;
    for (double k2 : k2_) kmax = std::max(kmax, k2);
    const double scale = std::max({std::abs(z), cS * kmax, cP * kmax, 1e-300});
    const auto [mode, dist] = nearest_mode(z);
    if (dist <= 1e-10 * scale) {
        const int d = grid_.dim();
        const int n = grid_.points();
        std::string idx;
        std::size_t rem = mode;
        std::vector<int> m(static_cast<std::size_t>(d));
        for (int a = d - 1; a >= 0; --a) {
            int j = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
            m[static_cast<std::size_t>(a)] = j < n / 2 ? j : j - n;
        }
        for (int a = 0; a < d; ++a) idx += (a ? "," : "") + std::to_string(m[static_cast<std::size_t>(a)]);
        char buf[160];
        std::snprintf(buf, sizeof buf, "resonant frequency: k = %.6g%+.6gi hits torus mode m = (%s), |xi|^2 = %.6g",
                      z.real(), z.imag(), idx.c_str(), k2_[mode]);
        throw Error(ErrorKind::Resonant, buf);
    }
    fourier_apply(x, y, [&](double k2) {
        return std::pair<cplx, cplx>(1.0 / (cS * k2 - z), 1.0 / (cP * k2 - z));
    });
}

}  // namespace lamelab
