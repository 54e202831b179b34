#include "gsp/spectral.hpp"

#include <Eigen/Eigenvalues>

namespace gsp {

Spectrum full_eigendecomposition(const SparseSymmetricOperator<double>& op, Index oracle_cap) {
  if (op.size() > oracle_cap) {
    throw Error(ErrorCode::TooLargeForOracle, "n = " + std::to_string(op.size()) +
                                                  " exceeds the oracle cap " +
                                                  std::to_string(oracle_cap));
  }
  Spectrum out;
  if (op.size() == 0) return out;

  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(op.to_dense());
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::DegenerateSpectrum, "symmetric eigensolver did not converge");
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  for (Index k = 0; k < out.eigenvectors.cols(); ++k) {
    Index arg = 0;
    out.eigenvectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (out.eigenvectors(arg, k) < 0.0) out.eigenvectors.col(k) *= -1.0;
  }
  return out;
}

VectorXd fourier_transform(const Spectrum& spectrum, const VectorXd& s) {
  require_same_size(spectrum.size(), s.size(), "fourier_transform");
  return spectrum.eigenvectors.transpose() * s;
}

VectorXd inverse_fourier_transform(const Spectrum& spectrum, const VectorXd& s_hat) {
  require_same_size(spectrum.size(), s_hat.size(), "inverse_fourier_transform");
  return spectrum.eigenvectors * s_hat;
}

VectorXd exact_filter(const Spectrum& spectrum, const Filter& g, const VectorXd& s) {
  // Round-off can push the zero eigenvalue slightly negative; filters live on [0, lambda_max].
  const VectorXd response = evaluate(g, spectrum.eigenvalues.cwiseMax(0.0));
  return inverse_fourier_transform(spectrum, response.cwiseProduct(fourier_transform(spectrum, s)));
}

}  // namespace gsp
