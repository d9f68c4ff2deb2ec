#include <doctest.h>

#include <Eigen/Dense>

#include "lamelab/krylov.hpp"
#include "lamelab/parallel.hpp"

using namespace lamelab;

TEST_CASE("gmres solves a non-normal system") {
    const std::size_t n = 60;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n) * cplx(3.0, 1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) M(i, i + 1) = 1.0;
    Eigen::VectorXcd b = Eigen::VectorXcd::LinSpaced(n, 1.0, 2.0);
    LinearOp A = [&](std::span<const cplx> x, std::span<cplx> y) {
        Eigen::Map<Eigen::VectorXcd>(y.data(), n) = M * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
    };
    const auto res = gmres(A, nullptr, std::vector<cplx>(b.data(), b.data() + n), {1e-12, 20, 500});
    Eigen::Map<const Eigen::VectorXcd> x(res.x.data(), n);
    CHECK((M * x - b).norm() <= 1e-11 * b.norm());
}

TEST_CASE("arnoldi finds the dominant eigenvalues") {
    const std::size_t n = 200;
    std::vector<cplx> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = cplx(1.0, 0.1) / (1.0 + static_cast<double>(i));
    LinearOp T = [&](std::span<const cplx> x, std::span<cplx> y) {
        for (std::size_t i = 0; i < n; ++i) y[i] = diag[i] * x[i];
    };
    const auto pairs = arnoldi_largest(T, n, 3, {});
    REQUIRE(pairs.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(pairs[static_cast<std::size_t>(i)].value - diag[static_cast<std::size_t>(i)]) <= 1e-9);
}

TEST_CASE("parallel_for covers every index once") {
    set_thread_count(3);
    std::vector<int> hits(100, 0);
    parallel_for(100, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw std::runtime_error("boom"); }), std::runtime_error);
    set_thread_count(1);
}

TEST_CASE("lanczos top eigenvalue on a projected subspace") {
    const std::size_t n = 50;
    RealOp A = [&](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<double>(i + 1) * x[i];
    };
    CHECK(lanczos_largest(A, n, {}).value == doctest::Approx(50.0).epsilon(1e-10));
    const auto drop_last = [&](std::span<double> v) { v[n - 1] = 0.0; };
    CHECK(lanczos_largest(A, n, {}, drop_last).value == doctest::Approx(49.0).epsilon(1e-10));
}
