#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gsp/core.hpp"
#include "gsp/filter.hpp"

namespace gsp {

/// sin(pi/2 cos^2(pi t)) on [-1/2, 1/2], zero elsewhere.
double itersine_window(double t);

/// Piecewise-linear normalized empirical spectral CDF: C(0) = 0,
/// C(lambda_max) = 1, linear between the distinct eigenvalues, clamped
/// outside [0, lambda_max].
class SpectralWarp {
 public:
  /// Eigenvalues must be ascending. Throws EmptySpectrum when empty and
  /// DegenerateSpectrum when all eigenvalues coincide.
  explicit SpectralWarp(const VectorXd& eigenvalues);

  double operator()(double lambda) const;
  double lambda_max() const { return knots_x_.back(); }
  const std::vector<double>& knots_x() const { return knots_x_; }
  const std::vector<double>& knots_y() const { return knots_y_; }

 private:
  std::vector<double> knots_x_;
  std::vector<double> knots_y_;
};

struct Filterbank {
  std::vector<Filter> filters;
  double lambda_max = 0.0;
  bool adapted = false;

  Index size() const { return static_cast<Index>(filters.size()); }
};

/// g_k(x) = itersine_window(x / delta - (k + 1) / 2), delta = 2 lambda_max / (R + 1).
Filter itersine_translate(double lambda_max, Index count, Index index);

/// R half-overlapping itersine translates covering [0, lambda_max].
Filterbank uniform_translates(Index count, double lambda_max);

/// Translates on [0, 1] composed with the spectral CDF of `eigenvalues`.
Filterbank adapted_translates(Index count, const VectorXd& eigenvalues);

/// Composes every filter of `bank` with x -> bank.lambda_max * C(x), where C
/// is the spectral CDF. The result covers [0, warp.lambda_max()].
Filterbank warp_filterbank(const Filterbank& bank, std::shared_ptr<const SpectralWarp> warp);

Filter constant_filter(double value);
Filter heat_filter(double tau);                       // exp(-tau x)
Filter mexican_hat_filter(double scale);              // (s x) exp(-(s x)^2)
Filter low_pass_filter(double scale = 1.0);           // exp(-(s x)^4)
/// sum_k c_k (x / scale)^k.
Filter polynomial_filter(const std::vector<double>& coefficients, double scale = 1.0);

/// [low pass, mexican hat at scales t_1..t_J]. t_1 = 2 / lambda_max places the
/// wavelet peak at lambda_max / (2 sqrt 2); further scales double t.
Filterbank mexican_hat_bank(double lambda_max, Index num_scales = 1);

/// Rebuilds a filter from its name and parameters. Filters carrying
/// `adapted=1` need the warp they were built with.
Filter make_filter(const std::string& name, const FilterParams& params,
                   std::shared_ptr<const SpectralWarp> warp = nullptr);

/// One line per filter: `name key=value ...`.
std::string format_filterbank(const Filterbank& bank);
Filterbank parse_filterbank(const std::string& text,
                            std::shared_ptr<const SpectralWarp> warp = nullptr);

}  // namespace gsp
