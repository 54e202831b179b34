#pragma once

#include <concepts>
#include <cstdint>
#include <utility>

#include <Eigen/SparseCore>

#include "gsp/core.hpp"

namespace gsp {

enum class OperatorKind { Combinatorial, Normalized, Generic };

/// Anything that can multiply a vector: the filtering backends only need
/// `size()` and `apply(x, y)` computing y = A x.
template <class Op>
concept LinearOperator = requires(const Op& op, const Vector<typename Op::Scalar>& x,
                                  Vector<typename Op::Scalar>& y) {
  typename Op::Scalar;
  { op.size() } -> std::convertible_to<Index>;
  op.apply(x, y);
};

/// Symmetric matrix in compressed sparse rows. Immutable after construction.
template <class Scalar_>
class SparseSymmetricOperator {
 public:
  using Scalar = Scalar_;
  using Storage = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

  SparseSymmetricOperator() = default;

  /// Takes ownership of a compressed matrix. Symmetry is the caller's
  /// responsibility; see is_symmetric().
  SparseSymmetricOperator(Storage matrix, OperatorKind kind)
      : matrix_(std::move(matrix)), kind_(kind) {
    matrix_.makeCompressed();
  }

  Index size() const { return matrix_.rows(); }
  OperatorKind kind() const { return kind_; }
  const Storage& matrix() const { return matrix_; }
  Index nonzeros() const { return matrix_.nonZeros(); }

  /// y = A x. Each row is accumulated in ascending column order so repeated
  /// calls are bit-identical.
  void apply(const Vector<Scalar>& x, Vector<Scalar>& y) const {
    require_same_size(size(), x.size(), "apply_operator");
    y.resize(size());
    const auto* outer = matrix_.outerIndexPtr();
    const auto* inner = matrix_.innerIndexPtr();
    const Scalar* values = matrix_.valuePtr();
    for (Index row = 0; row < size(); ++row) {
      Scalar acc(0);
      for (auto k = outer[row]; k < outer[row + 1]; ++k) acc += values[k] * x[inner[k]];
      y[row] = acc;
    }
  }

  Scalar max_abs_entry() const {
    Scalar m(0);
    for (Index k = 0; k < matrix_.nonZeros(); ++k) m = std::max(m, std::abs(matrix_.valuePtr()[k]));
    return m;
  }

  bool is_symmetric() const {
    Storage transposed = matrix_.transpose();
    return (Storage(matrix_ - transposed)).norm() == Scalar(0);
  }

  Matrix<Scalar> to_dense() const { return Matrix<Scalar>(matrix_); }

 private:
  Storage matrix_;
  OperatorKind kind_ = OperatorKind::Generic;
};

template <LinearOperator Op>
Vector<typename Op::Scalar> apply_operator(const Op& op, const Vector<typename Op::Scalar>& x) {
  Vector<typename Op::Scalar> y;
  op.apply(x, y);
  return y;
}

/// Wraps an operator and counts how many times it is applied.
template <LinearOperator Op>
class CountingOperator {
 public:
  using Scalar = typename Op::Scalar;

  explicit CountingOperator(const Op& op) : op_(&op) {}

  Index size() const { return op_->size(); }
  void apply(const Vector<Scalar>& x, Vector<Scalar>& y) const {
    ++count_;
    op_->apply(x, y);
  }

  std::int64_t count() const { return count_; }
  void reset() { count_ = 0; }

 private:
  const Op* op_;
  mutable std::int64_t count_ = 0;
};

/// Builds a generic operator from a dense symmetric matrix (tests, small cases).
template <class Derived>
SparseSymmetricOperator<typename Derived::Scalar> make_operator(
    const Eigen::MatrixBase<Derived>& dense, OperatorKind kind = OperatorKind::Generic) {
  using Scalar = typename Derived::Scalar;
  typename SparseSymmetricOperator<Scalar>::Storage m = dense.sparseView();
  return SparseSymmetricOperator<Scalar>(std::move(m), kind);
}

}  // namespace gsp
