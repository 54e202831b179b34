#pragma once

#include "gsp/core.hpp"
#include "gsp/filter.hpp"
#include "gsp/sparse_operator.hpp"

namespace gsp {

inline constexpr Index kDefaultOracleCap = 2000;

/// Dense eigendecomposition L = U diag(eigenvalues) U^T, eigenvalues
/// ascending. The sign of each eigenvector is fixed so that its
/// largest-magnitude entry is positive.
struct Spectrum {
  VectorXd eigenvalues;
  MatrixXd eigenvectors;

  Index size() const { return eigenvalues.size(); }
  double lambda_max() const { return size() ? eigenvalues[size() - 1] : 0.0; }
};

/// Densifies the operator and runs a symmetric eigensolver. Reference use
/// only: O(n^3) time, O(n^2) memory.
Spectrum full_eigendecomposition(const SparseSymmetricOperator<double>& op,
                                 Index oracle_cap = kDefaultOracleCap);

/// s_hat = U^T s.
VectorXd fourier_transform(const Spectrum& spectrum, const VectorXd& s);

/// s = U s_hat.
VectorXd inverse_fourier_transform(const Spectrum& spectrum, const VectorXd& s_hat);

/// Ground truth g(L) s = U g(Lambda) U^T s.
VectorXd exact_filter(const Spectrum& spectrum, const Filter& g, const VectorXd& s);

}  // namespace gsp
