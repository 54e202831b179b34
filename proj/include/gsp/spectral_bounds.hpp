#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "gsp/core.hpp"
#include "gsp/lanczos.hpp"
#include "gsp/sparse_operator.hpp"
#include "gsp/tridiagonal.hpp"

namespace gsp {

struct LambdaMaxOptions {
  Index max_order = 50;
  double safety_factor = 1.01;
  std::uint64_t seed = 0x5eed'1a4b'da3aULL;
  /// Stop early once the top Ritz pair's residual |beta_m q_m(m)| drops below
  /// tol * theta_max.
  double tol = 1e-10;
};

/// Upper estimate of the largest eigenvalue of a symmetric PSD operator:
/// the top Ritz value of a Lanczos run from a seeded random vector, times a
/// safety factor. Operators of size <= 2 are handled in closed form.
template <LinearOperator Op>
typename Op::Scalar estimate_lambda_max(const Op& op, const LambdaMaxOptions& opts = {}) {
  using Scalar = typename Op::Scalar;
  const Index n = op.size();
  if (n == 0) return Scalar(0);
  if (n <= 2) {
    // Columns of the operator recovered by applying it to unit vectors.
    Matrix<Scalar> a(n, n);
    Vector<Scalar> e = Vector<Scalar>::Zero(n), col;
    for (Index k = 0; k < n; ++k) {
      e.setZero();
      e[k] = Scalar(1);
      op.apply(e, col);
      a.col(k) = col;
    }
    if (n == 1) return std::max(a(0, 0), Scalar(0));
    const Scalar mean = (a(0, 0) + a(1, 1)) / Scalar(2);
    const Scalar radius = std::hypot((a(0, 0) - a(1, 1)) / Scalar(2), a(0, 1));
    return std::max(mean + radius, Scalar(0));
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  Vector<Scalar> start(n);
  for (Index k = 0; k < n; ++k) start[k] = static_cast<Scalar>(normal(rng));

  LanczosProcess<Op> process(op, start);
  const Index order = std::min(n, opts.max_order);
  bool settled = false;
  for (Index m = 5; m < order && !settled; m += 5) {
    if (process.extend_to(m) < m) break;
    const auto eig = tridiagonal_eigendecomposition(process.basis().H);
    const Scalar top = eig.eigenvalues[m - 1];
    const Scalar residual = process.last_beta() * std::abs(eig.eigenvectors(m - 1, m - 1));
    settled = residual <= Scalar(opts.tol) * top;
  }
  if (!settled) process.extend_to(order);
  const auto eig = tridiagonal_eigendecomposition(process.basis().H);
  const Scalar theta = eig.eigenvalues[process.size() - 1];
  return std::max(theta, Scalar(0)) * static_cast<Scalar>(opts.safety_factor);
}

}  // namespace gsp
