#include <cmath>

#include "doctest.h"
#include "gsp/filterbank.hpp"
#include "gsp/spectral.hpp"
#include "test_support.hpp"

using namespace gsp;

TEST_CASE("full_eigendecomposition of hand-solvable graphs") {
  const auto p2 = full_eigendecomposition(combinatorial_laplacian(gsp::testing::path2()));
  CHECK(p2.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p2.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(p2.eigenvectors.col(0).isApprox((VectorXd(2) << r, r).finished(), 1e-14));
  CHECK(p2.eigenvectors.col(1).isApprox((VectorXd(2) << r, -r).finished(), 1e-14));

  const auto zero = full_eigendecomposition(combinatorial_laplacian(build_graph(3, {})));
  CHECK(zero.eigenvalues.isZero(0.0));

  const auto k3 = full_eigendecomposition(combinatorial_laplacian(gsp::testing::triangle()));
  CHECK(std::abs(k3.eigenvalues[0]) < 1e-14);
  CHECK(k3.eigenvalues[1] == doctest::Approx(3.0));
  CHECK(k3.eigenvalues[2] == doctest::Approx(3.0));
  // Degenerate eigenspace: compare projectors, not vectors.
  const MatrixXd projector = k3.eigenvectors.rightCols(2) * k3.eigenvectors.rightCols(2).transpose();
  const MatrixXd expected = MatrixXd::Identity(3, 3) - MatrixXd::Constant(3, 3, 1.0 / 3.0);
  CHECK((projector - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("oracle cap") {
  const auto op = combinatorial_laplacian(erdos_renyi(30, 0.2, {1}));
  CHECK_THROWS_AS(full_eigendecomposition(op, 29), Error);
  try {
    full_eigendecomposition(op, 10);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLargeForOracle);
  }
  CHECK(full_eigendecomposition(op, 30).size() == 30);
}

TEST_CASE("Spectrum invariants on random graphs") {
  for (const auto& g : gsp::testing::random_corpus(100, 2, 200, 101)) {
    const auto L = combinatorial_laplacian(g);
    const auto spec = full_eigendecomposition(L);
    const Index n = spec.size();
    const MatrixXd& U = spec.eigenvectors;
    CHECK((U.transpose() * U - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
    const MatrixXd rebuilt = U * spec.eigenvalues.asDiagonal() * U.transpose();
    CHECK((L.to_dense() - rebuilt).cwiseAbs().maxCoeff() <= 1e-8 * std::max(spec.lambda_max(), 1.0));
    for (Index k = 1; k < n; ++k) CHECK(spec.eigenvalues[k - 1] <= spec.eigenvalues[k]);
    // Sign convention.
    for (Index k = 0; k < n; ++k) {
      Index arg = 0;
      U.col(k).cwiseAbs().maxCoeff(&arg);
      CHECK(U(arg, k) > 0.0);
    }
  }
}

TEST_CASE("Fourier transform") {
  const Graph g = erdos_renyi(60, 0.15, {3});
  const auto spec = full_eigendecomposition(combinatorial_laplacian(g));
  const VectorXd x3 = spec.eigenvectors.col(3);
  VectorXd e3 = VectorXd::Zero(60);
  e3[3] = 1.0;
  CHECK((fourier_transform(spec, x3) - e3).norm() < 1e-12);

  VectorXd e0 = VectorXd::Zero(60);
  e0[0] = 1.0;
  CHECK(inverse_fourier_transform(spec, e0) == spec.eigenvectors.col(0));
  CHECK(inverse_fourier_transform(spec, VectorXd::Zero(60)).isZero(0.0));

  CHECK_THROWS_AS(fourier_transform(spec, VectorXd::Ones(59)), Error);
  CHECK_THROWS_AS(inverse_fourier_transform(spec, VectorXd::Ones(61)), Error);

  for (const auto& h : gsp::testing::random_corpus(20, 5, 150, 5)) {
    const auto sp = full_eigendecomposition(combinatorial_laplacian(h));
    const VectorXd s = gsp::testing::random_vector(sp.size(), 8);
    const VectorXd s_hat = fourier_transform(sp, s);
    CHECK(std::abs(s_hat.norm() - s.norm()) <= 1e-12 * s.norm());
    CHECK((inverse_fourier_transform(sp, s_hat) - s).norm() <= 1e-12 * s.norm());
  }
}

TEST_CASE("exact_filter") {
  const auto L = combinatorial_laplacian(gsp::testing::path2());
  const auto p2 = full_eigendecomposition(L);
  const VectorXd s = (VectorXd(2) << 1, 0).finished();
  const VectorXd heat = exact_filter(p2, heat_filter(1.0), s);
  CHECK(heat[0] == doctest::Approx((1 + std::exp(-2.0)) / 2).epsilon(1e-14));
  CHECK(heat[1] == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-14));

  const Filter identity_response("x", [](double x) { return x; });
  for (const auto& g : gsp::testing::random_corpus(10, 5, 120, 19)) {
    const auto op = combinatorial_laplacian(g);
    const auto spec = full_eigendecomposition(op);
    const VectorXd v = gsp::testing::random_vector(spec.size(), 2);
    CHECK((exact_filter(spec, constant_filter(1.0), v) - v).norm() <= 1e-12 * v.norm());
    const double op_norm = std::max(spec.lambda_max(), 1.0);
    CHECK((exact_filter(spec, identity_response, v) - apply_operator(op, v)).norm() <=
          1e-10 * op_norm * v.norm());
  }
}

TEST_CASE("exact_filter linearity and multiplicativity") {
  const Filter g1 = heat_filter(0.3);
  const Filter g2 = mexican_hat_filter(0.2);
  const Filter product("product", [&](double x) { return g1(x) * g2(x); });
  for (const auto& g : gsp::testing::random_corpus(10, 10, 150, 31)) {
    const auto spec = full_eigendecomposition(combinatorial_laplacian(g));
    const VectorXd s = gsp::testing::random_vector(spec.size(), 4);
    const VectorXd t = gsp::testing::random_vector(spec.size(), 5);
    const double a = 1.7, b = -0.4;
    const VectorXd lhs = exact_filter(spec, g1, a * s + b * t);
    const VectorXd rhs = a * exact_filter(spec, g1, s) + b * exact_filter(spec, g1, t);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());

    const VectorXd composed = exact_filter(spec, g1, exact_filter(spec, g2, s));
    const VectorXd direct = exact_filter(spec, product, s);
    CHECK((composed - direct).norm() <= 1e-10 * direct.norm());
  }
}
