#include "lamelab/krylov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lamelab/error.hpp"

namespace lamelab {

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

namespace {

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(std::span<cplx> x, cplx a) {
    for (auto& z : x) z *= a;
}

// Two passes of modified Gram-Schmidt against `basis`; returns the coefficients.
std::vector<cplx> orthogonalize(const std::vector<std::vector<cplx>>& basis, std::span<cplx> w) {
    std::vector<cplx> h(basis.size(), 0.0);
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const cplx c = dot(basis[k], w);
            axpy(-c, basis[k], w);
            h[k] += c;
        }
    }
    return h;
}

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) {
        const double re = normal(rng);
        z = cplx(re, normal(rng));
    }
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------

GmresResult gmres(const LinearOp& A, const LinearOp* M, std::span<const cplx> b, const GmresOptions& opt,
                  std::span<const cplx> x0) {
    const std::size_t n = b.size();
    GmresResult res;
    res.x.assign(n, 0.0);
    if (!x0.empty()) std::copy(x0.begin(), x0.end(), res.x.begin());

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(res.x.begin(), res.x.end(), cplx(0.0));
        res.converged = true;
        return res;
    }

    std::vector<cplx> r(n), tmp(n), z(n);
    auto residual = [&] {
        A(res.x, tmp);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - tmp[i];
        return norm2(r);
    };

    double rnorm = residual();
    const int m = opt.restart;
    while (res.iterations < opt.max_iter) {
        res.rel_residual = rnorm / bnorm;
        if (res.rel_residual <= opt.tol) break;

        std::vector<std::vector<cplx>> V;
        V.emplace_back(r);
        scale(V.back(), 1.0 / rnorm);
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
        std::vector<cplx> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
        Eigen::VectorXcd g = Eigen::VectorXcd::Zero(m + 1);
        g(0) = rnorm;

        int j = 0;
        for (; j < m && res.iterations < opt.max_iter; ++j) {
            ++res.iterations;
            std::vector<cplx> w(n);
            if (M) {
                (*M)(V[static_cast<std::size_t>(j)], z);
                A(z, w);
            } else {
                A(V[static_cast<std::size_t>(j)], w);
            }
            const auto h = orthogonalize(V, w);
            for (std::size_t k = 0; k < h.size(); ++k) H(static_cast<int>(k), j) = h[k];
            const double hn = norm2(w);
            H(j + 1, j) = hn;

            for (int k = 0; k < j; ++k) {
                const cplx t = std::conj(cs[static_cast<std::size_t>(k)]) * H(k, j) + std::conj(sn[static_cast<std::size_t>(k)]) * H(k + 1, j);
                H(k + 1, j) = -sn[static_cast<std::size_t>(k)] * H(k, j) + cs[static_cast<std::size_t>(k)] * H(k + 1, j);
                H(k, j) = t;
            }
            const cplx a = H(j, j);
            const double bb = std::abs(H(j + 1, j));
            const double rho = std::hypot(std::abs(a), bb);
            cplx c = rho == 0.0 ? cplx(1.0) : a / rho;
            cplx s = rho == 0.0 ? cplx(0.0) : cplx(bb / rho);
            // Rotation [conj(c) conj(s); -s c] maps (a, bb) to (rho, 0).
            cs[static_cast<std::size_t>(j)] = c;
            sn[static_cast<std::size_t>(j)] = s;
            H(j, j) = rho;
            H(j + 1, j) = 0.0;
            g(j + 1) = -s * g(j);
            g(j) = std::conj(c) * g(j);

            if (hn > 0.0) {
                scale(w, 1.0 / hn);
                V.push_back(std::move(w));
            }
            if (std::abs(g(j + 1)) / bnorm <= opt.tol * 0.5 || hn == 0.0) {
                ++j;
                break;
            }
        }

        Eigen::VectorXcd y = H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
        std::fill(tmp.begin(), tmp.end(), cplx(0.0));
        for (int k = 0; k < j; ++k) axpy(y(k), V[static_cast<std::size_t>(k)], tmp);
        if (M) {
            (*M)(tmp, z);
            axpy(1.0, z, res.x);
        } else {
            axpy(1.0, tmp, res.x);
        }
        rnorm = residual();
    }
    res.rel_residual = rnorm / bnorm;
    res.converged = res.rel_residual <= opt.tol;
    return res;
}

// ---------------------------------------------------------------------------

LanczosResult lanczos_largest(const RealOp& A, std::size_t n, const LanczosOptions& opt,
                              const std::function<void(std::span<double>)>& project) {
    LanczosResult out;
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> start(n);
    for (auto& v : start) v = normal(rng);

    auto ddot = [](std::span<const double> a, std::span<const double> b) {
        return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    };

    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        if (project) project(start);
        double s0 = std::sqrt(ddot(start, start));
        if (s0 == 0.0) {
            // Operator range is trivial: the eigenvalue is zero.
            out.converged = true;
            out.vector.assign(n, 0.0);
            return out;
        }
        for (auto& v : start) v /= s0;

        std::vector<std::vector<double>> Q{start};
        std::vector<double> alpha, beta;
        std::vector<double> w(n);
        double last_beta = 0.0;
        for (int j = 0; j < opt.subspace; ++j) {
            A(Q.back(), w);
            ++out.matvecs;
            if (project) project(w);
            const double a = ddot(Q.back(), w);
            alpha.push_back(a);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : Q) {
                    const double c = ddot(q, w);
                    for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
                }
            last_beta = std::sqrt(ddot(w, w));
            if (last_beta <= 1e-14 * std::max(std::abs(a), 1e-300) || j + 1 == opt.subspace) break;
            beta.push_back(last_beta);
            for (auto& v : w) v /= last_beta;
            Q.push_back(w);
        }

        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) T(i, i) = alpha[static_cast<std::size_t>(i)];
        for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        const double theta = es.eigenvalues()(m - 1);
        const Eigen::VectorXd y = es.eigenvectors().col(m - 1);

        std::vector<double> x(n, 0.0);
        for (int k = 0; k < m; ++k)
            for (std::size_t i = 0; i < n; ++i) x[i] += y(k) * Q[static_cast<std::size_t>(k)][i];

        out.value = theta;
        out.residual = last_beta * std::abs(y(m - 1));
        out.vector = x;
        if (out.residual <= opt.tol * std::max(std::abs(theta), 1e-300) || theta == 0.0) {
            out.converged = true;
            return out;
        }
        start = std::move(x);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<EigenPair> arnoldi_largest(const LinearOp& T, std::size_t n, int count, const SubspaceOptions& opt,
                                       int* cycles_used) {
    require(count >= 1, "need at least one eigenpair");
    // Locked vectors span an approximate invariant subspace of T (Schur vectors);
    // every new Krylov space is built for the deflated operator (I - QQ*) T.
    std::vector<std::vector<cplx>> Q, TQ;
    std::vector<cplx> start = random_vector(n, opt.seed);

    for (int cycle = 0; cycle < opt.max_cycles && static_cast<int>(Q.size()) < count; ++cycle) {
        if (cycles_used) *cycles_used = cycle + 1;
        orthogonalize(Q, start);
        double sn = norm2(start);
        if (sn <= 1e-12) {
            start = random_vector(n, opt.seed + static_cast<std::uint64_t>(cycle) + 1);
            orthogonalize(Q, start);
            sn = norm2(start);
        }
        scale(start, 1.0 / sn);

        std::vector<std::vector<cplx>> V{start}, TV;
        for (int j = 0; j < opt.subspace; ++j) {
            std::vector<cplx> w(n);
            T(V.back(), w);
            TV.push_back(w);
            if (j + 1 == opt.subspace) break;
            orthogonalize(Q, w);
            orthogonalize(V, w);
            const double hn = norm2(w);
            if (hn <= 1e-14 * norm2(TV.back())) break;
            scale(w, 1.0 / hn);
            V.push_back(std::move(w));
        }

        const int k = static_cast<int>(V.size());
        Eigen::MatrixXcd G(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) G(a, b) = dot(V[static_cast<std::size_t>(a)], TV[static_cast<std::size_t>(b)]);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(G);
        std::vector<int> order(static_cast<std::size_t>(k));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double ma = std::abs(es.eigenvalues()(a));
            const double mb = std::abs(es.eigenvalues()(b));
            if (ma != mb) return ma > mb;
            return a < b;
        });

        const int want = std::min(count - static_cast<int>(Q.size()), k);
        std::vector<cplx> next(n, 0.0);
        bool locked_any = false;
        bool prefix = true;
        for (int t = 0; t < want; ++t) {
            const int idx = order[static_cast<std::size_t>(t)];
            const cplx theta = es.eigenvalues()(idx);
            const Eigen::VectorXcd y = es.eigenvectors().col(idx);
            std::vector<cplx> s(n, 0.0), ts(n, 0.0);
            for (int a = 0; a < k; ++a) {
                axpy(y(a), V[static_cast<std::size_t>(a)], s);
                axpy(y(a), TV[static_cast<std::size_t>(a)], ts);
            }
            // Residual of the deflated operator.
            std::vector<cplx> r = ts;
            orthogonalize(Q, r);
            for (std::size_t i = 0; i < n; ++i) r[i] -= theta * s[i];
            const double rel = norm2(r) / (norm2(s) * std::max(std::abs(theta), 1e-300));
            // Lock a converged prefix only, so the locked set stays the dominant part of the spectrum.
            if (prefix && rel <= opt.tol) {
                const auto c1 = orthogonalize(Q, s);
                for (std::size_t l = 0; l < Q.size(); ++l) axpy(-c1[l], TQ[l], ts);
                const double nrm = norm2(s);
                scale(s, 1.0 / nrm);
                scale(ts, 1.0 / nrm);
                Q.push_back(std::move(s));
                TQ.push_back(std::move(ts));
                locked_any = true;
            } else {
                prefix = false;
                axpy(1.0 / norm2(s), s, next);
            }
        }
        if (norm2(next) == 0.0 || locked_any) {
            // Continue from the remaining Ritz directions of this cycle.
            for (int t = 1; t < want; ++t) {
                const Eigen::VectorXcd y = es.eigenvectors().col(order[static_cast<std::size_t>(t)]);
                for (int a = 0; a < k; ++a) axpy(y(a), V[static_cast<std::size_t>(a)], next);
            }
        }
        start = std::move(next);
    }
    if (static_cast<int>(Q.size()) < count)
        fail_convergence("shift-invert Arnoldi did not converge within " + std::to_string(opt.max_cycles) + " cycles");

    // Rayleigh-Ritz on the locked invariant subspace.
    const int p = static_cast<int>(Q.size());
    Eigen::MatrixXcd G(p, p);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) G(a, b) = dot(Q[static_cast<std::size_t>(a)], TQ[static_cast<std::size_t>(b)]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(G);
    std::vector<EigenPair> pairs;
    for (int t = 0; t < p; ++t) {
        const cplx theta = es.eigenvalues()(t);
        const Eigen::VectorXcd y = es.eigenvectors().col(t);
        std::vector<cplx> s(n, 0.0), ts(n, 0.0);
        for (int a = 0; a < p; ++a) {
            axpy(y(a), Q[static_cast<std::size_t>(a)], s);
            axpy(y(a), TQ[static_cast<std::size_t>(a)], ts);
        }
        const double sn = norm2(s);
        for (std::size_t i = 0; i < n; ++i) ts[i] -= theta * s[i];
        const double r = norm2(ts) / (sn * std::max(std::abs(theta), 1e-300));
        scale(s, 1.0 / sn);
        pairs.push_back({theta, std::move(s), r});
    }
    std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        return std::abs(a.value) > std::abs(b.value);
    });
    return pairs;
}

}  // namespace lamelab
