#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "gsp/chebyshev.hpp"
#include "gsp/core.hpp"
#include "gsp/filterbank.hpp"
#include "gsp/lanczos.hpp"
#include "gsp/sparse_operator.hpp"
#include "gsp/spectral.hpp"
#include "gsp/spectral_bounds.hpp"

namespace gsp {

enum class Method { Exact, Chebyshev, Lanczos };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Chebyshev: return "chebyshev";
    case Method::Lanczos: return "lanczos";
  }
  return "unknown";
}

inline Method parse_method(std::string_view name) {
  if (name == "exact") return Method::Exact;
  if (name == "chebyshev") return Method::Chebyshev;
  if (name == "lanczos") return Method::Lanczos;
  throw Error(ErrorCode::InvalidConfig, "unknown method '" + std::string(name) + "'");
}

struct FilterbankApplyOptions {
  Index order = 30;
  /// Chebyshev interval end; estimated from the operator when unset.
  std::optional<double> lambda_max;
  /// Reused by Method::Exact when given, otherwise computed.
  const Spectrum* spectrum = nullptr;
  Index oracle_cap = kDefaultOracleCap;
};

/// Filters one signal with every filter of a bank using one method and order.
/// The Lanczos path builds a single Krylov basis and reuses it for all filters,
/// so it costs `order` operator applications regardless of the bank size.
template <LinearOperator Op>
std::vector<VectorXd> filterbank_apply(Method method, const Op& op, const Filterbank& bank,
                                       const VectorXd& s, const FilterbankApplyOptions& opts = {}) {
  static_assert(std::is_same_v<typename Op::Scalar, double>);
  require_same_size(op.size(), s.size(), "filterbank_apply");
  std::vector<VectorXd> out;
  out.reserve(bank.filters.size());

  switch (method) {
    case Method::Exact: {
      std::optional<Spectrum> owned;
      const Spectrum* spectrum = opts.spectrum;
      if (!spectrum) {
        if constexpr (std::is_same_v<Op, SparseSymmetricOperator<double>>) {
          owned = full_eigendecomposition(op, opts.oracle_cap);
          spectrum = &*owned;
        } else {
          throw Error(ErrorCode::InvalidConfig, "exact filtering of a wrapped operator needs a spectrum");
        }
      }
      for (const auto& g : bank.filters) out.push_back(exact_filter(*spectrum, g, s));
      break;
    }
    case Method::Chebyshev: {
      const double lambda_max = opts.lambda_max ? *opts.lambda_max : estimate_lambda_max(op);
      for (const auto& g : bank.filters)
        out.push_back(chebyshev_apply(op, chebyshev_coefficients(g, lambda_max, opts.order), s));
      break;
    }
    case Method::Lanczos: {
      const auto basis = lanczos_basis(op, s, opts.order);
      for (const auto& g : bank.filters) out.push_back(krylov_filter(basis, g, basis.size()));
      break;
    }
  }
  return out;
}

}  // namespace gsp
