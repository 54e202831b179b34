#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <vector>

#include "gsp/core.hpp"
#include "gsp/sparse_operator.hpp"
#include "gsp/tridiagonal.hpp"

namespace gsp {

/// Orthonormal Krylov basis V (n x m), the projected tridiagonal H = V^T L V,
/// and the norm of the start vector.
template <class Scalar>
struct KrylovBasis {
  Matrix<Scalar> V;
  TridiagonalMatrix<Scalar> H;
  Scalar s_norm = Scalar(0);
  /// Set when beta_j fell below the breakdown tolerance; the Krylov space is
  /// then invariant and has dimension *breakdown_at.
  std::optional<Index> breakdown_at;
  /// Largest ||L v_j|| seen; a lower bound on lambda_max used to scale
  /// tolerances.
  Scalar scale = Scalar(0);

  Index size() const { return H.size(); }
};

/// Incremental Lanczos process over an operator. The basis grows on demand
/// with extend_to(); every new direction is re-orthogonalized twice against
/// all previous ones when `reorthogonalize` is set.
template <LinearOperator Op>
class LanczosProcess {
 public:
  using Scalar = typename Op::Scalar;

  static constexpr double kBreakdownTolerance = 1e-12;

  LanczosProcess(const Op& op, const Vector<Scalar>& s, bool reorthogonalize = true)
      : op_(&op), reorthogonalize_(reorthogonalize) {
    require_same_size(op.size(), s.size(), "lanczos start vector");
    basis_.s_norm = s.norm();
    if (!(basis_.s_norm > Scalar(0)))
      throw Error(ErrorCode::ZeroStartVector, "start vector must be nonzero");
    next_ = s / basis_.s_norm;
  }

  const KrylovBasis<Scalar>& basis() const { return basis_; }
  Index size() const { return basis_.size(); }
  bool broke_down() const { return basis_.breakdown_at.has_value(); }
  /// Norm of the residual direction after the latest step (beta_{m+1}).
  Scalar last_beta() const { return last_beta_; }

  /// Grows the basis to min(m, n) columns, or fewer on breakdown. Returns the
  /// resulting dimension.
  Index extend_to(Index m) {
    const Index n = op_->size();
    m = std::min(m, n);
    if (m <= size() || broke_down()) return size();
    reserve(m);
    while (size() < m && !broke_down()) step();
    return size();
  }

 private:
  void reserve(Index m) {
    const Index n = op_->size();
    const Index old = size();
    if (basis_.V.cols() >= m) return;
    Matrix<Scalar> grown(n, m);
    if (old > 0) grown.leftCols(old) = basis_.V.leftCols(old);
    basis_.V.swap(grown);
  }

  void step() {
    const Index j = size();
    auto& V = basis_.V;
    V.col(j) = next_;

    op_->apply(next_, w_);
    basis_.scale = std::max(basis_.scale, w_.norm());
    const Scalar alpha = V.col(j).dot(w_);
    w_ -= alpha * V.col(j);
    if (j > 0) w_ -= last_beta_ * V.col(j - 1);
    if (reorthogonalize_) {
      for (int pass = 0; pass < 2; ++pass) {
        for (Index i = 0; i <= j; ++i) w_ -= V.col(i).dot(w_) * V.col(i);
      }
    }
    const Scalar beta = w_.norm();

    auto& H = basis_.H;
    H.alpha.conservativeResize(j + 1);
    H.alpha[j] = alpha;
    if (j > 0) {
      H.beta.conservativeResize(j);
      H.beta[j - 1] = last_beta_;
    }
    last_beta_ = beta;

    if (!(beta > Scalar(kBreakdownTolerance) * basis_.scale)) {
      basis_.breakdown_at = j + 1;
      basis_.V.conservativeResize(Eigen::NoChange, j + 1);
      return;
    }
    next_ = w_ / beta;
  }

  const Op* op_;
  bool reorthogonalize_;
  KrylovBasis<Scalar> basis_;
  Vector<Scalar> next_;
  Vector<Scalar> w_;
  Scalar last_beta_ = Scalar(0);
};

/// Runs M steps of Lanczos from s (fewer on breakdown).
template <LinearOperator Op>
KrylovBasis<typename Op::Scalar> lanczos_basis(const Op& op, const Vector<typename Op::Scalar>& s,
                                               Index M, bool reorthogonalize = true) {
  if (M < 1) throw Error(ErrorCode::InvalidCount, "Lanczos order must be >= 1");
  LanczosProcess<Op> process(op, s, reorthogonalize);
  process.extend_to(M);
  auto basis = process.basis();
  basis.V.conservativeResize(Eigen::NoChange, basis.size());
  return basis;
}

/// ||s|| V_m g(H_m) e_1 from the first m columns of an existing basis.
/// Ritz values are clamped below at zero, the lower end of a Laplacian
/// spectrum, before g is evaluated.
template <class Scalar, class G>
  requires std::invocable<const G&, double>
Vector<Scalar> krylov_filter(const KrylovBasis<Scalar>& basis, const G& g, Index m) {
  m = std::min(m, basis.size());
  const auto eig = tridiagonal_eigendecomposition(basis.H.leading(m));
  Vector<Scalar> weights(m);
  for (Index k = 0; k < m; ++k) {
    const Scalar theta = std::max(eig.eigenvalues[k], Scalar(0));
    const Scalar value = static_cast<Scalar>(g(static_cast<double>(theta)));
    if (!std::isfinite(static_cast<double>(value)))
      throw Error(ErrorCode::FilterDomainError, "filter not finite at Ritz value " + std::to_string(theta));
    weights[k] = value * eig.eigenvectors(0, k);
  }
  const Vector<Scalar> y = eig.eigenvectors * weights;
  return basis.s_norm * (basis.V.leftCols(m) * y);
}

/// g_M approximation of g(L) s from an order-M Krylov space.
template <LinearOperator Op, class G>
Vector<typename Op::Scalar> lanczos_filter_apply(const Op& op, const G& g,
                                                 const Vector<typename Op::Scalar>& s, Index M) {
  const auto basis = lanczos_basis(op, s, M);
  return krylov_filter(basis, g, basis.size());
}

template <class Scalar>
struct LanczosResult {
  Vector<Scalar> approximation;
  /// The first tested order M whose estimate met the tolerance (or the last
  /// order tested).
  Index order_used = 0;
  /// Krylov dimension the approximation was computed from (M + j, or the
  /// breakdown dimension).
  Index basis_size = 0;
  std::vector<Scalar> error_estimates;
  bool converged = false;
};

struct AdaptiveOptions {
  double eps = 1e-6;
  Index lookahead = 3;  // j
  Index max_order = 200;
  Index step = 1;
};

/// Grows one Krylov basis and tests M = 1, 1 + step, ... with the estimate
/// ||g_{M+j} - g_M||. Stops at the first M meeting eps and returns g_{M+j}.
/// A breakdown makes the current approximation exact and stops immediately.
template <LinearOperator Op, class G>
LanczosResult<typename Op::Scalar> lanczos_filter_adaptive(const Op& op, const G& g,
                                                           const Vector<typename Op::Scalar>& s,
                                                           const AdaptiveOptions& opts = {}) {
  using Scalar = typename Op::Scalar;
  if (!(opts.eps > 0.0)) throw Error(ErrorCode::InvalidConfig, "eps must be positive");
  if (opts.lookahead < 1) throw Error(ErrorCode::InvalidConfig, "lookahead j must be >= 1");
  if (opts.step < 1) throw Error(ErrorCode::InvalidConfig, "step must be >= 1");
  if (opts.max_order < 1) throw Error(ErrorCode::InvalidConfig, "max_order must be >= 1");

  LanczosProcess<Op> process(op, s);
  LanczosResult<Scalar> result;

  for (Index M = 1;; M += opts.step) {
    const Index target = M + opts.lookahead;
    if (target > opts.max_order) break;
    const Index dim = process.extend_to(target);
    const Index lower = std::min(M, dim);
    const Vector<Scalar> ahead = krylov_filter(process.basis(), g, dim);
    const Vector<Scalar> current = krylov_filter(process.basis(), g, lower);
    const Scalar estimate = (ahead - current).norm();
    result.error_estimates.push_back(estimate);
    result.order_used = lower;
    result.basis_size = dim;
    result.approximation = ahead;
    if (process.broke_down() || estimate <= Scalar(opts.eps)) {
      result.converged = true;
      return result;
    }
  }

  // Budget exhausted (or max_order too small for a single test).
  const Index dim = process.extend_to(opts.max_order);
  result.approximation = krylov_filter(process.basis(), g, dim);
  result.basis_size = dim;
  if (result.order_used == 0) result.order_used = dim;
  result.converged = process.broke_down();
  return result;
}

}  // namespace gsp
