#include "lamelab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lamelab {

Grid::Grid(int d, int n, double L) : d_(d), n_(n), L_(L), size_(1) {
    for (int a = 0; a < d; ++a) size_ *= static_cast<std::size_t>(n);
}

Grid make_grid(int d, int n, double L) {
    require(d >= 1 && d <= kMaxDim, "grid dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
    require(n % 2 == 0, "grid points per axis must be even (got " + std::to_string(n) + ")");
    require(n >= 8, "grid needs at least 8 points per axis");
    require(L > 0.0 && std::isfinite(L), "grid half width must be positive");
    double total = std::pow(static_cast<double>(n), d);
    require(total <= 1u << 27, "grid too large");
    return Grid(d, n, L);
}

double Grid::cell_volume() const { return std::pow(spacing(), d_); }

Point Grid::node(std::size_t index) const {
    Point x{};
    for (int a = d_ - 1; a >= 0; --a) {
        x[a] = coordinate(static_cast<int>(index % static_cast<std::size_t>(n_)));
        index /= static_cast<std::size_t>(n_);
    }
    return x;
}

double Grid::radius(std::size_t index) const {
    Point x = node(index);
    double r2 = 0.0;
    for (int a = 0; a < d_; ++a) r2 += x[a] * x[a];
    return std::sqrt(r2);
}

std::vector<double> Grid::radii() const {
    std::vector<double> r(size_);
    for_each_node(*this, [&](std::size_t i, const Point& x) {
        double r2 = 0.0;
        for (int a = 0; a < d_; ++a) r2 += x[a] * x[a];
        r[i] = std::sqrt(r2);
    });
    return r;
}

double Grid::min_radius() const {
    // The nodes closest to the origin are (+-h/2, ..., +-h/2).
    return 0.5 * spacing() * std::sqrt(static_cast<double>(d_));
}

void require_same_grid(const Grid& a, const Grid& b) {
    require(a == b, "fields live on different grids");
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(Grid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    require(values_.size() == grid_.size(), "scalar field size does not match its grid");
}

ScalarField ScalarField::zeros(const Grid& g) { return ScalarField(g, std::vector<cplx>(g.size())); }

ScalarField ScalarField::constant(const Grid& g, cplx value) {
    return ScalarField(g, std::vector<cplx>(g.size(), value));
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (const auto& z : values_) m = std::max(m, std::abs(z));
    return m;
}

bool ScalarField::is_real(double rel_tol) const {
    double im = 0.0;
    for (const auto& z : values_) im = std::max(im, std::abs(z.imag()));
    return im <= rel_tol * std::max(max_abs(), 1e-300) || im == 0.0;
}

VectorField::VectorField(Grid grid, std::vector<ScalarField> components)
    : grid_(grid), components_(std::move(components)) {
    require(static_cast<int>(components_.size()) == grid_.dim(),
            "vector field needs exactly d components");
    for (const auto& c : components_) require_same_grid(c.grid(), grid_);
}

VectorField VectorField::zeros(const Grid& g) {
    return VectorField(g, std::vector<ScalarField>(static_cast<std::size_t>(g.dim()), ScalarField::zeros(g)));
}

VectorField VectorField::single_component(const ScalarField& s, int component) {
    const Grid& g = s.grid();
    require(component >= 0 && component < g.dim(), "component index out of range");
    std::vector<ScalarField> comps(static_cast<std::size_t>(g.dim()), ScalarField::zeros(g));
    comps[static_cast<std::size_t>(component)] = s;
    return VectorField(g, std::move(comps));
}

bool VectorField::is_real(double rel_tol) const {
    double im = 0.0;
    for (const auto& c : components_)
        for (const auto& z : c.values()) im = std::max(im, std::abs(z.imag()));
    return im == 0.0 || im <= rel_tol * std::max(max_abs(), 1e-300);
}

double VectorField::max_abs() const {
    double m = 0.0;
    for (const auto& c : components_) m = std::max(m, c.max_abs());
    return m;
}

std::vector<cplx> VectorField::flatten() const {
    std::vector<cplx> out;
    out.reserve(grid_.size() * components_.size());
    for (const auto& c : components_) out.insert(out.end(), c.values().begin(), c.values().end());
    return out;
}

VectorField VectorField::unflatten(const Grid& g, std::span<const cplx> flat) {
    const std::size_t N = g.size();
    require(flat.size() == N * static_cast<std::size_t>(g.dim()), "flat vector has the wrong length");
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(g.dim()));
    for (int c = 0; c < g.dim(); ++c) {
        auto first = flat.begin() + static_cast<std::ptrdiff_t>(N * static_cast<std::size_t>(c));
        comps.emplace_back(g, std::vector<cplx>(first, first + static_cast<std::ptrdiff_t>(N)));
    }
    return VectorField(g, std::move(comps));
}

// ---------------------------------------------------------------------------

namespace {

template <class Op>
ScalarField zip(const ScalarField& a, const ScalarField& b, Op op) {
    require_same_grid(a.grid(), b.grid());
    std::vector<cplx> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
    return ScalarField(a.grid(), std::move(v));
}

template <class Op>
VectorField zip(const VectorField& a, const VectorField& b, Op op) {
    require_same_grid(a.grid(), b.grid());
    std::vector<ScalarField> comps;
    for (int c = 0; c < a.dim(); ++c) comps.push_back(zip(a[c], b[c], op));
    return VectorField(a.grid(), std::move(comps));
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x + y; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x - y; });
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x * y; });
}
ScalarField operator*(cplx c, const ScalarField& a) {
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (auto& z : v) z *= c;
    return ScalarField(a.grid(), std::move(v));
}
ScalarField conj(const ScalarField& a) {
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (auto& z : v) z = std::conj(z);
    return ScalarField(a.grid(), std::move(v));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x + y; });
}
VectorField operator-(const VectorField& a, const VectorField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x - y; });
}
VectorField operator*(cplx c, const VectorField& a) {
    std::vector<ScalarField> comps;
    for (const auto& s : a.components()) comps.push_back(c * s);
    return VectorField(a.grid(), std::move(comps));
}
VectorField operator*(const ScalarField& s, const VectorField& a) {
    std::vector<ScalarField> comps;
    for (const auto& c : a.components()) comps.push_back(s * c);
    return VectorField(a.grid(), std::move(comps));
}

// ---------------------------------------------------------------------------

std::vector<cplx> to_fourier(const ScalarField& f) {
    std::vector<cplx> c(f.values().begin(), f.values().end());
    fourier::forward(c, f.grid().dim(), f.grid().points());
    return c;
}

ScalarField from_fourier(const Grid& g, std::vector<cplx> coeffs) {
    fourier::inverse(coeffs, g.dim(), g.points());
    return ScalarField(g, std::move(coeffs));
}

VectorField gradient(const ScalarField& f) {
    const Grid& g = f.grid();
    const auto hat = to_fourier(f);
    std::vector<ScalarField> comps;
    for (int a = 0; a < g.dim(); ++a) {
        std::vector<cplx> c(hat.size());
        for_each_mode(g, [&](std::size_t i, const Point& xi) { c[i] = cplx(0.0, xi[a]) * hat[i]; });
        comps.push_back(from_fourier(g, std::move(c)));
    }
    return VectorField(g, std::move(comps));
}

ScalarField divergence(const VectorField& u) {
    const Grid& g = u.grid();
    std::vector<cplx> acc(g.size());
    for (int a = 0; a < g.dim(); ++a) {
        const auto hat = to_fourier(u[a]);
        for_each_mode(g, [&](std::size_t i, const Point& xi) { acc[i] += cplx(0.0, xi[a]) * hat[i]; });
    }
    return from_fourier(g, std::move(acc));
}

ScalarField laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    auto hat = to_fourier(f);
    const int d = g.dim();
    for_each_mode(g, [&](std::size_t i, const Point& xi) {
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += xi[a] * xi[a];
        hat[i] *= -k2;
    });
    return from_fourier(g, std::move(hat));
}

VectorField laplacian(const VectorField& u) {
    std::vector<ScalarField> comps;
    for (const auto& c : u.components()) comps.push_back(laplacian(c));
    return VectorField(u.grid(), std::move(comps));
}

std::vector<VectorField> jacobian(const VectorField& u) {
    std::vector<VectorField> out;
    for (const auto& c : u.components()) out.push_back(gradient(c));
    return out;
}

AnyField differentiate(const AnyField& field, DiffKind kind) {
    switch (kind) {
        case DiffKind::Gradient:
            if (const auto* s = std::get_if<ScalarField>(&field)) return gradient(*s);
            fail("gradient expects a scalar field");
        case DiffKind::Divergence:
            if (const auto* v = std::get_if<VectorField>(&field)) return divergence(*v);
            fail("divergence expects a vector field");
        case DiffKind::Laplacian:
            if (const auto* s = std::get_if<ScalarField>(&field)) return laplacian(*s);
            return laplacian(std::get<VectorField>(field));
    }
    fail("unknown differentiation kind");
}

// ---------------------------------------------------------------------------

cplx inner_l2(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid());
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s * a.grid().cell_volume();
}

cplx inner_l2(const VectorField& a, const VectorField& b) {
    require_same_grid(a.grid(), b.grid());
    cplx s = 0.0;
    for (int c = 0; c < a.dim(); ++c) s += inner_l2(a[c], b[c]);
    return s;
}

double l2_norm(const ScalarField& a) { return std::sqrt(std::max(0.0, inner_l2(a, a).real())); }
double l2_norm(const VectorField& a) { return std::sqrt(std::max(0.0, inner_l2(a, a).real())); }

double component_norm_sum(const VectorField& u) {
    double s = 0.0;
    for (const auto& c : u.components()) s += l2_norm(c);
    return s;
}

double gradient_norm_sq(const ScalarField& f) {
    const Grid& g = f.grid();
    const auto hat = to_fourier(f);
    const int d = g.dim();
    double s = 0.0;
    for_each_mode(g, [&](std::size_t i, const Point& xi) {
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += xi[a] * xi[a];
        s += k2 * std::norm(hat[i]);
    });
    return s * g.cell_volume() / static_cast<double>(g.size());
}

double gradient_norm_sq(const VectorField& u) {
    double s = 0.0;
    for (const auto& c : u.components()) s += gradient_norm_sq(c);
    return s;
}

double weighted_norm(const ScalarField& f, double s) {
    const Grid& g = f.grid();
    const auto r = g.radii();
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(r[i], 2.0 * s) * std::norm(f[i]);
    return std::sqrt(acc * g.cell_volume());
}

double weighted_norm(const VectorField& u, double s) {
    double acc = 0.0;
    for (const auto& c : u.components()) {
        double w = weighted_norm(c, s);
        acc += w * w;
    }
    return std::sqrt(acc);
}

double parseval_norm_sq(const ScalarField& f) {
    const auto hat = to_fourier(f);
    double s = 0.0;
    for (const auto& z : hat) s += std::norm(z);
    return s * f.grid().cell_volume() / static_cast<double>(f.size());
}

}  // namespace lamelab
