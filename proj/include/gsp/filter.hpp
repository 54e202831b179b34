#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gsp/core.hpp"

namespace gsp {

/// Ordered (name, value) parameters, as written in the bank text format.
using FilterParams = std::vector<std::pair<std::string, double>>;

/// A scalar spectral response g : [0, lambda_max] -> R with a name and the
/// parameters that reproduce it.
class Filter {
 public:
  using Function = std::function<double(double)>;

  Filter(std::string name, Function fn, FilterParams params = {})
      : name_(std::move(name)),
        fn_(std::make_shared<const Function>(std::move(fn))),
        params_(std::move(params)) {}

  /// Throws FilterDomainError if the response is not finite at x.
  double operator()(double x) const {
    const double v = (*fn_)(x);
    if (!std::isfinite(v))
      throw Error(ErrorCode::FilterDomainError,
                  "filter '" + name_ + "' is not finite at " + std::to_string(x));
    return v;
  }

  const std::string& name() const { return name_; }
  const FilterParams& params() const { return params_; }

  /// Value of a named parameter, or `fallback` if absent.
  double param(const std::string& key, double fallback) const {
    for (const auto& [k, v] : params_)
      if (k == key) return v;
    return fallback;
  }

 private:
  std::string name_;
  std::shared_ptr<const Function> fn_;
  FilterParams params_;
};

/// Evaluates a filter on every entry of a vector.
template <class Derived>
Vector<typename Derived::Scalar> evaluate(const Filter& g, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  Vector<Scalar> out(x.size());
  for (Index k = 0; k < x.size(); ++k)
    out[k] = static_cast<Scalar>(g(static_cast<double>(x[k])));
  return out;
}

}  // namespace gsp
