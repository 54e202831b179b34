#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <numbers>

#include "gsp/core.hpp"
#include "gsp/sparse_operator.hpp"

namespace gsp {

/// Truncated shifted Chebyshev series
///   g(x) ~ c_0 / 2 + sum_{m=1}^{M} c_m T_m(2x / lambda_max - 1)
/// valid on [0, lambda_max].
template <class Scalar = double>
struct ChebyshevExpansion {
  Vector<Scalar> coefficients;
  Scalar lambda_max = Scalar(0);

  Index order() const { return coefficients.size() - 1; }

  /// Evaluates the truncated series at a scalar point (Clenshaw).
  Scalar operator()(Scalar x) const {
    const Scalar y = Scalar(2) * x / lambda_max - Scalar(1);
    Scalar b1(0), b2(0);
    for (Index m = order(); m >= 1; --m) {
      const Scalar b0 = Scalar(2) * y * b1 - b2 + coefficients[m];
      b2 = b1;
      b1 = b0;
    }
    return y * b1 - b2 + coefficients[0] / Scalar(2);
  }
};

inline Index default_quadrature_points(Index order) {
  return std::max<Index>(2 * (order + 1), 64);
}

/// Coefficients c_0..c_M of g on [0, lambda_max] from the K-point midpoint
/// rule in theta:
///   c_m = (2/K) sum_k cos(m theta_k) g(lambda_max/2 (cos theta_k + 1)),
///   theta_k = pi (k - 1/2) / K.
template <class Scalar = double, class G>
  requires std::invocable<const G&, double>
ChebyshevExpansion<Scalar> chebyshev_coefficients(const G& g, Scalar lambda_max, Index order,
                                                  Index quadrature_points = 0) {
  if (order < 0) throw Error(ErrorCode::InvalidCount, "Chebyshev order must be >= 0");
  if (!(lambda_max > Scalar(0)))
    throw Error(ErrorCode::InvalidConfig, "lambda_max must be positive");
  const Index K = quadrature_points > 0 ? quadrature_points : default_quadrature_points(order);
  const Scalar pi = std::numbers::pi_v<Scalar>;

  Vector<Scalar> samples(K), theta(K);
  for (Index k = 0; k < K; ++k) {
    theta[k] = pi * (Scalar(k) + Scalar(0.5)) / Scalar(K);
    const Scalar x = lambda_max / Scalar(2) * (std::cos(theta[k]) + Scalar(1));
    const double v = g(static_cast<double>(x));
    if (!std::isfinite(v))
      throw Error(ErrorCode::FilterDomainError, "filter not finite at " + std::to_string(x));
    samples[k] = static_cast<Scalar>(v);
  }

  ChebyshevExpansion<Scalar> out{Vector<Scalar>(order + 1), lambda_max};
  for (Index m = 0; m <= order; ++m) {
    Scalar acc(0);
    for (Index k = 0; k < K; ++k) acc += std::cos(Scalar(m) * theta[k]) * samples[k];
    out.coefficients[m] = Scalar(2) / Scalar(K) * acc;
  }
  return out;
}

/// Applies the truncated series to s with exactly `order` operator
/// applications, via the shifted recurrence
///   T_m(L) s = 2 (2L/lambda_max - I) T_{m-1}(L) s - T_{m-2}(L) s.
/// The working set is four vectors: two recurrence terms, the product buffer
/// and the accumulated result.
template <LinearOperator Op>
Vector<typename Op::Scalar> chebyshev_apply(const Op& op,
                                            const ChebyshevExpansion<typename Op::Scalar>& expansion,
                                            const Vector<typename Op::Scalar>& s) {
  using Scalar = typename Op::Scalar;
  require_same_size(op.size(), s.size(), "chebyshev_apply");
  const Index order = expansion.order();
  const Vector<Scalar>& c = expansion.coefficients;
  const Scalar shift = Scalar(2) / expansion.lambda_max;

  Vector<Scalar> result = c[0] / Scalar(2) * s;
  if (order == 0) return result;

  Vector<Scalar> prev = s;
  Vector<Scalar> curr;
  op.apply(prev, curr);
  curr = shift * curr - prev;  // T_1(L) s
  result += c[1] * curr;

  Vector<Scalar> product;
  for (Index m = 2; m <= order; ++m) {
    op.apply(curr, product);
    // next = 2 (shift L - I) curr - prev, written into prev.
    prev = Scalar(2) * (shift * product - curr) - prev;
    prev.swap(curr);
    result += c[m] * curr;
  }
  return result;
}

/// Maximum of |g(x) - series(x)| over an equispaced grid on [0, lambda_max].
template <class Scalar, class G>
  requires std::invocable<const G&, double>
Scalar chebyshev_uniform_error(const G& g, const ChebyshevExpansion<Scalar>& expansion,
                               Index grid_points = 10000) {
  grid_points = std::max<Index>(grid_points, 2);
  Scalar worst(0);
  for (Index k = 0; k < grid_points; ++k) {
    const Scalar x = expansion.lambda_max * Scalar(k) / Scalar(grid_points - 1);
    worst = std::max(worst, std::abs(static_cast<Scalar>(g(static_cast<double>(x))) - expansion(x)));
  }
  return worst;
}

}  // namespace gsp
