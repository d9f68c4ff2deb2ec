#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "lamelab/error.hpp"
#include "lamelab/fourier.hpp"

namespace lamelab {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 6;
using Point = std::array<double, kMaxDim>;

/**
 * Truncated periodic box [-L, L)^d with n cell-centered nodes per axis.
 *
 * Node j on an axis sits at -L + (j + 1/2) h, h = 2L/n, so the origin is never
 * a node and every weight |x|^s is finite on the grid. Flat indices run with
 * axis 0 slowest.
 */
class Grid {
public:
    int dim() const { return d_; }
    int points() const { return n_; }
    double half_width() const { return L_; }
    double spacing() const { return 2.0 * L_ / n_; }
    std::size_t size() const { return size_; }
    double cell_volume() const;

    double coordinate(int j) const { return -L_ + (j + 0.5) * spacing(); }
    Point node(std::size_t index) const;
    double radius(std::size_t index) const;
    std::vector<double> radii() const;
    double min_radius() const;

    bool operator==(const Grid&) const = default;

private:
    friend Grid make_grid(int d, int n, double L);
    Grid(int d, int n, double L);

    int d_ = 0;
    int n_ = 0;
    double L_ = 0.0;
    std::size_t size_ = 0;
};

/// Rejects d outside [1, kMaxDim], odd n, n < 8 and L <= 0.
Grid make_grid(int d, int n, double L);

/// Visit every node as f(flat_index, x).
template <class F>
void for_each_node(const Grid& g, F&& f) {
    const int d = g.dim();
    const int n = g.points();
    std::array<int, kMaxDim> idx{};
    Point x{};
    for (int a = 0; a < d; ++a) x[a] = g.coordinate(0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        f(i, x);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < n) {
                x[a] = g.coordinate(idx[a]);
                break;
            }
            idx[a] = 0;
            x[a] = g.coordinate(0);
        }
    }
}

/// Visit every Fourier mode (FFT ordering) as f(flat_index, xi). The Nyquist
/// wavenumber is mapped to zero so that odd derivatives of real data stay real
/// and every multiplier below is built from the same symbol.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
    const int d = g.dim();
    const int n = g.points();
    const auto table = fourier::axis_wavenumbers(n, g.spacing(), true);
    std::array<int, kMaxDim> idx{};
    Point xi{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        f(i, xi);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < n) {
                xi[a] = table[static_cast<std::size_t>(idx[a])];
                break;
            }
            idx[a] = 0;
            xi[a] = 0.0;
        }
    }
}

class ScalarField {
public:
    ScalarField(Grid grid, std::vector<cplx> values);

    static ScalarField zeros(const Grid& g);
    static ScalarField constant(const Grid& g, cplx value);

    /// Samples f(x) at every node; f receives the node coordinates as a Point.
    template <class F>
    static ScalarField sample(const Grid& g, F&& f) {
        std::vector<cplx> v(g.size());
        for_each_node(g, [&](std::size_t i, const Point& x) { v[i] = f(x); });
        return ScalarField(g, std::move(v));
    }

    const Grid& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    cplx operator[](std::size_t i) const { return values_[i]; }

    bool is_real(double rel_tol = 1e-12) const;
    double max_abs() const;

private:
    Grid grid_;
    std::vector<cplx> values_;
};

class VectorField {
public:
    VectorField(Grid grid, std::vector<ScalarField> components);

    static VectorField zeros(const Grid& g);
    /// Field with `s` in component `component` (0-based) and zeros elsewhere.
    static VectorField single_component(const ScalarField& s, int component);

    const Grid& grid() const { return grid_; }
    int dim() const { return static_cast<int>(components_.size()); }
    const ScalarField& operator[](int c) const { return components_[static_cast<std::size_t>(c)]; }
    const std::vector<ScalarField>& components() const { return components_; }

    bool is_real(double rel_tol = 1e-12) const;
    double max_abs() const;

    /// Components concatenated, component-major; length d * n^d.
    std::vector<cplx> flatten() const;
    static VectorField unflatten(const Grid& g, std::span<const cplx> flat);

private:
    Grid grid_;
    std::vector<ScalarField> components_;
};

using AnyField = std::variant<ScalarField, VectorField>;

void require_same_grid(const Grid& a, const Grid& b);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(cplx c, const ScalarField& a);
/// Pointwise product.
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField conj(const ScalarField& a);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(cplx c, const VectorField& a);
/// Pointwise multiplication of every component by a scalar field.
VectorField operator*(const ScalarField& s, const VectorField& a);

// ---------------------------------------------------------------------------
// Spectral calculus. Multipliers are i*xi per axis with xi the torus
// wavenumber (Nyquist mapped to zero), so divergence(gradient(.)) and
// laplacian(.) are the same operator exactly.

enum class DiffKind { Gradient, Divergence, Laplacian };

AnyField differentiate(const AnyField& field, DiffKind kind);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& u);
/// Gradients of every component: result[j] = grad u_j.
std::vector<VectorField> jacobian(const VectorField& u);

std::vector<cplx> to_fourier(const ScalarField& f);
ScalarField from_fourier(const Grid& g, std::vector<cplx> coeffs);

// ---------------------------------------------------------------------------
// Quadrature. inner_l2 conjugates its second argument.

cplx inner_l2(const ScalarField& a, const ScalarField& b);
cplx inner_l2(const VectorField& a, const VectorField& b);
double l2_norm(const ScalarField& a);
double l2_norm(const VectorField& a);
/// sum_j ||u_j||, the component-sum norm; satisfies ||u|| <= |||u||| <= sqrt(d) ||u||.
double component_norm_sum(const VectorField& u);
/// sum over components of ||grad u_j||^2.
double gradient_norm_sq(const ScalarField& f);
double gradient_norm_sq(const VectorField& u);

/// (h^d sum |x|^{2s} |field|^2)^{1/2}, a plain nodal sum.
double weighted_norm(const ScalarField& f, double s);
double weighted_norm(const VectorField& u, double s);

/// Parseval form of inner_l2(f, f), computed from the Fourier coefficients.
double parseval_norm_sq(const ScalarField& f);

}  // namespace lamelab
