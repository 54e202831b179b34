#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gsp/core.hpp"

namespace gsp {

/// Symmetric tridiagonal matrix: diagonal `alpha` (length m) and
/// off-diagonal `beta` (length m - 1), beta[k] coupling rows k and k + 1.
template <class Scalar>
struct TridiagonalMatrix {
  Vector<Scalar> alpha;
  Vector<Scalar> beta;

  Index size() const { return alpha.size(); }

  /// Leading m x m block.
  TridiagonalMatrix leading(Index m) const {
    return {alpha.head(m), beta.head(std::max<Index>(m - 1, 0))};
  }

  Matrix<Scalar> to_dense() const {
    const Index m = size();
    Matrix<Scalar> h = Matrix<Scalar>::Zero(m, m);
    h.diagonal() = alpha;
    if (m > 1) {
      h.diagonal(1) = beta;
      h.diagonal(-1) = beta;
    }
    return h;
  }
};

template <class Scalar>
struct TridiagonalEigen {
  Vector<Scalar> eigenvalues;   // ascending
  Matrix<Scalar> eigenvectors;  // columns, orthonormal
};

/// Eigen-decomposition of a symmetric tridiagonal matrix by the implicit QL
/// method with Wilkinson shifts (EISPACK tql2 structure). Rotations are
/// accumulated into the identity, so the columns of `eigenvectors` are the
/// eigenvectors of H itself.
template <class Scalar>
TridiagonalEigen<Scalar> tridiagonal_eigendecomposition(const TridiagonalMatrix<Scalar>& h) {
  using std::abs;
  using std::hypot;
  const Index m = h.size();
  Vector<Scalar> d = h.alpha;
  // e[k] is the coupling between rows k and k + 1; e[m - 1] is a sentinel.
  Vector<Scalar> e = Vector<Scalar>::Zero(m);
  if (m > 1) e.head(m - 1) = h.beta;
  Matrix<Scalar> z = Matrix<Scalar>::Identity(m, m);

  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  constexpr int kMaxSweeps = 60;

  for (Index l = 0; l < m; ++l) {
    for (int iter = 0;; ++iter) {
      // Find a negligible off-diagonal element splitting the matrix.
      Index split = l;
      for (; split < m - 1; ++split) {
        const Scalar dd = abs(d[split]) + abs(d[split + 1]);
        if (abs(e[split]) <= eps * dd) break;
      }
      if (split == l) break;
      if (iter == kMaxSweeps) break;  // accept current estimate; never observed in practice

      Scalar g = (d[l + 1] - d[l]) / (Scalar(2) * e[l]);
      Scalar r = hypot(g, Scalar(1));
      g = d[split] - d[l] + e[l] / (g + (g >= 0 ? r : -r));
      Scalar s(1), c(1), p(0);
      Index i = split - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        Scalar f = s * e[i];
        const Scalar b = c * e[i];
        r = hypot(f, g);
        e[i + 1] = r;
        if (r == Scalar(0)) {
          d[i + 1] -= p;
          e[split] = Scalar(0);
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + Scalar(2) * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (Index k = 0; k < m; ++k) {
          f = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * f;
          z(k, i) = c * z(k, i) - s * f;
        }
      }
      if (underflow && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[split] = Scalar(0);
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return d[a] < d[b]; });
  TridiagonalEigen<Scalar> out{Vector<Scalar>(m), Matrix<Scalar>(m, m)};
  for (Index k = 0; k < m; ++k) {
    out.eigenvalues[k] = d[order[k]];
    out.eigenvectors.col(k) = z.col(order[k]);
  }
  return out;
}

}  // namespace gsp
