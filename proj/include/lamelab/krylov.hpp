#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lamelab {

using cplx = std::complex<double>;
/// y = A x
using LinearOp = std::function<void(std::span<const cplx>, std::span<cplx>)>;
using RealOp = std::function<void(std::span<const double>, std::span<double>)>;

struct GmresOptions {
    double tol = 1e-10;  // on ||b - A x|| / ||b||
    int restart = 60;
    int max_iter = 2000;
};

struct GmresResult {
    std::vector<cplx> x;
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

/// Restarted GMRES with optional right preconditioner M (A M y = b, x = M y).
GmresResult gmres(const LinearOp& A, const LinearOp* M, std::span<const cplx> b, const GmresOptions& opt,
                  std::span<const cplx> x0 = {});

struct LanczosOptions {
    double tol = 1e-11;  // relative residual of the top Ritz pair
    int subspace = 40;
    int max_restarts = 200;
    std::uint64_t seed = 1;
};

struct LanczosResult {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;
    int matvecs = 0;
    bool converged = false;
};

/// Largest eigenvalue of a symmetric positive semi-definite operator of size n,
/// restricted to the range of `project` (applied to the start vector and every new
/// Krylov vector; pass nullptr for none). Full reorthogonalization; restarts from
/// the top Ritz vector.
LanczosResult lanczos_largest(const RealOp& A, std::size_t n, const LanczosOptions& opt,
                              const std::function<void(std::span<double>)>& project = nullptr);

struct EigenPair {
    cplx value;
    std::vector<cplx> vector;
    double residual = 0.0;
};

struct SubspaceOptions {
    int subspace = 30;
    int max_cycles = 60;
    double tol = 1e-9;  // relative residual of ||T v - theta v|| / |theta| for locking
    std::uint64_t seed = 1;
};

/// Eigenpairs of T with the largest |theta|, by explicitly restarted Arnoldi with
/// locking of converged Ritz vectors. Used with T = (A - sigma)^{-1}.
std::vector<EigenPair> arnoldi_largest(const LinearOp& T, std::size_t n, int count, const SubspaceOptions& opt,
                                       int* cycles_used = nullptr);

double norm2(std::span<const cplx> v);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);  // sum conj(a) b

}  // namespace lamelab
