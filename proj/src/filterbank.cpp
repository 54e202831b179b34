#include "gsp/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace gsp {

double itersine_window(double t) {
  if (std::abs(t) > 0.5) return 0.0;
  const double c = std::cos(std::numbers::pi * t);
  return std::sin(0.5 * std::numbers::pi * c * c);
}

SpectralWarp::SpectralWarp(const VectorXd& eigenvalues) {
  const Index n = eigenvalues.size();
  if (n == 0) throw Error(ErrorCode::EmptySpectrum, "no eigenvalues to adapt to");
  const double lo = std::max(eigenvalues[0], 0.0);
  const double hi = eigenvalues[n - 1];
  const double tol = 1e-12 * std::max(std::abs(hi), 1.0);
  if (!(hi - lo > tol) || !(hi > tol))
    throw Error(ErrorCode::DegenerateSpectrum, "all eigenvalues coincide; the spectral CDF is undefined");

  // One knot per group of (numerically) equal eigenvalues, at the mean rank.
  knots_x_.push_back(0.0);
  knots_y_.push_back(0.0);
  const double denom = static_cast<double>(n - 1);
  for (Index first = 0; first < n;) {
    Index last = first;
    while (last + 1 < n && eigenvalues[last + 1] - eigenvalues[first] <= tol) ++last;
    const double x = std::max(eigenvalues[first], 0.0);
    const double y = 0.5 * static_cast<double>(first + last) / denom;
    if (x <= tol) {
      knots_y_.front() = 0.0;  // the zero group pins C(0) = 0
    } else {
      knots_x_.push_back(x);
      knots_y_.push_back(y);
    }
    first = last + 1;
  }
  knots_y_.back() = 1.0;
}

double SpectralWarp::operator()(double lambda) const {
  if (lambda <= knots_x_.front()) return knots_y_.front();
  if (lambda >= knots_x_.back()) return knots_y_.back();
  const auto it = std::upper_bound(knots_x_.begin(), knots_x_.end(), lambda);
  const auto k = static_cast<std::size_t>(it - knots_x_.begin());
  const double x0 = knots_x_[k - 1], x1 = knots_x_[k];
  const double y0 = knots_y_[k - 1], y1 = knots_y_[k];
  return y0 + (y1 - y0) * (lambda - x0) / (x1 - x0);
}

Filter itersine_translate(double lambda_max, Index count, Index index) {
  const double delta = 2.0 * lambda_max / static_cast<double>(count + 1);
  const double offset = 0.5 * static_cast<double>(index + 1);
  return Filter("itersine", [delta, offset](double x) { return itersine_window(x / delta - offset); },
                {{"lambda_max", lambda_max},
                 {"count", static_cast<double>(count)},
                 {"index", static_cast<double>(index)}});
}

Filterbank uniform_translates(Index count, double lambda_max) {
  if (count < 2) throw Error(ErrorCode::InvalidCount, "need at least 2 translates");
  if (!(lambda_max > 0.0)) throw Error(ErrorCode::InvalidConfig, "lambda_max must be positive");
  Filterbank bank{{}, lambda_max, false};
  for (Index k = 0; k < count; ++k) bank.filters.push_back(itersine_translate(lambda_max, count, k));
  return bank;
}

namespace {

Filter warp_filter(const Filter& base, double domain, std::shared_ptr<const SpectralWarp> warp) {
  FilterParams params = base.params();
  params.emplace_back("adapted", 1.0);
  params.emplace_back("domain", domain);
  return Filter(base.name(), [base, domain, warp](double x) { return base(domain * (*warp)(x)); },
                std::move(params));
}

}  // namespace

Filterbank warp_filterbank(const Filterbank& bank, std::shared_ptr<const SpectralWarp> warp) {
  Filterbank out{{}, warp->lambda_max(), true};
  for (const auto& f : bank.filters) out.filters.push_back(warp_filter(f, bank.lambda_max, warp));
  return out;
}

Filterbank adapted_translates(Index count, const VectorXd& eigenvalues) {
  auto warp = std::make_shared<const SpectralWarp>(eigenvalues);
  return warp_filterbank(uniform_translates(count, 1.0), std::move(warp));
}

Filter constant_filter(double value) {
  return Filter("constant", [value](double) { return value; }, {{"value", value}});
}

Filter heat_filter(double tau) {
  return Filter("heat", [tau](double x) { return std::exp(-tau * x); }, {{"tau", tau}});
}

Filter mexican_hat_filter(double scale) {
  return Filter("mexican_hat",
                [scale](double x) {
                  const double t = scale * x;
                  return t * std::exp(-t * t);
                },
                {{"scale", scale}});
}

Filter low_pass_filter(double scale) {
  return Filter("low_pass",
                [scale](double x) {
                  const double t = scale * x;
                  return std::exp(-(t * t) * (t * t));
                },
                {{"scale", scale}});
}

Filter polynomial_filter(const std::vector<double>& coefficients, double scale) {
  FilterParams params{{"scale", scale}};
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    params.emplace_back("c" + std::to_string(k), coefficients[k]);
  return Filter("polynomial",
                [coefficients, scale](double x) {
                  double acc = 0.0;
                  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
                    acc = acc * (x / scale) + *it;
                  return acc;
                },
                std::move(params));
}

Filterbank mexican_hat_bank(double lambda_max, Index num_scales) {
  if (!(lambda_max > 0.0)) throw Error(ErrorCode::InvalidConfig, "lambda_max must be positive");
  if (num_scales < 1) throw Error(ErrorCode::InvalidCount, "need at least one wavelet scale");
  Filterbank bank{{low_pass_filter(1.0)}, lambda_max, false};
  double t = 2.0 / lambda_max;
  for (Index j = 0; j < num_scales; ++j, t *= 2.0) bank.filters.push_back(mexican_hat_filter(t));
  return bank;
}

Filter make_filter(const std::string& name, const FilterParams& params,
                   std::shared_ptr<const SpectralWarp> warp) {
  FilterParams base;
  bool adapted = false;
  double domain = 0.0;
  for (const auto& [k, v] : params) {
    if (k == "adapted") adapted = v != 0.0;
    else if (k == "domain") domain = v;
    else base.emplace_back(k, v);
  }
  auto get = [&](const std::string& key) {
    for (const auto& [k, v] : base)
      if (k == key) return v;
    throw Error(ErrorCode::ParseError, "filter '" + name + "' is missing parameter '" + key + "'");
  };

  Filter f = [&]() -> Filter {
    if (name == "constant") return constant_filter(get("value"));
    if (name == "heat") return heat_filter(get("tau"));
    if (name == "mexican_hat") return mexican_hat_filter(get("scale"));
    if (name == "low_pass") return low_pass_filter(get("scale"));
    if (name == "itersine")
      return itersine_translate(get("lambda_max"), static_cast<Index>(get("count")),
                                static_cast<Index>(get("index")));
    if (name == "polynomial") {
      std::vector<double> c;
      for (std::size_t k = 0;; ++k) {
        const std::string key = "c" + std::to_string(k);
        auto it = std::find_if(base.begin(), base.end(), [&](const auto& kv) { return kv.first == key; });
        if (it == base.end()) break;
        c.push_back(it->second);
      }
      return polynomial_filter(c, get("scale"));
    }
    throw Error(ErrorCode::ParseError, "unknown filter '" + name + "'");
  }();

  if (!adapted) return f;
  if (!warp) throw Error(ErrorCode::InvalidConfig, "adapted filter '" + name + "' needs a spectrum");
  return warp_filter(f, domain, std::move(warp));
}

std::string format_filterbank(const Filterbank& bank) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# lambda_max=" << bank.lambda_max << " adapted=" << (bank.adapted ? 1 : 0) << '\n';
  for (const auto& f : bank.filters) {
    os << f.name();
    for (const auto& [k, v] : f.params()) os << ' ' << k << '=' << v;
    os << '\n';
  }
  return os.str();
}

Filterbank parse_filterbank(const std::string& text, std::shared_ptr<const SpectralWarp> warp) {
  Filterbank bank;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto parse_pair = [&](const std::string& token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key=value, got '" + token + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size() - eq - 1)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number in '" + token + "'");
    return std::pair{token.substr(0, eq), v};
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;
    if (head[0] == '#') {
      std::string token;
      while (tokens >> token) {
        if (token.find('=') == std::string::npos) continue;
        const auto [k, v] = parse_pair(token);
        if (k == "lambda_max") bank.lambda_max = v;
        if (k == "adapted") bank.adapted = v != 0.0;
      }
      continue;
    }
    FilterParams params;
    std::string token;
    while (tokens >> token) params.push_back(parse_pair(token));
    Filter f = [&] {
      try {
        return make_filter(head, params, warp);
      } catch (const Error& e) {
        // Prefix the location; drop the code name the message already carries.
        std::string msg = e.what();
        const auto colon = msg.find(": ");
        if (colon != std::string::npos) msg = msg.substr(colon + 2);
        throw Error(e.code(), "line " + std::to_string(line_no) + ": " + msg);
      }
    }();
    if (f.param("adapted", 0.0) != 0.0) bank.adapted = true;
    bank.lambda_max = std::max(bank.lambda_max, f.param("lambda_max", 0.0));
    bank.filters.push_back(std::move(f));
  }
  if (bank.filters.empty()) throw Error(ErrorCode::InvalidCount, "filterbank has no filters");
  if (bank.adapted && warp) bank.lambda_max = warp->lambda_max();
  return bank;
}

}  // namespace gsp
