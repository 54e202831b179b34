#include "gsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "gsp/chebyshev.hpp"
#include "gsp/generators.hpp"
#include "gsp/lanczos.hpp"
#include "gsp/spectral_bounds.hpp"

namespace gsp {

Graph make_graph(const GraphSpec& spec) {
  switch (spec.family) {
    case GraphFamily::ErdosRenyi: return erdos_renyi(spec.n, spec.p, RngSeed{spec.seed});
    case GraphFamily::Sensor: return sensor_graph(spec.n, RngSeed{spec.seed}, {.k = spec.k});
  }
  throw Error(ErrorCode::InvalidConfig, "unknown graph family");
}

Filterbank make_bank(const BankSpec& spec, const Spectrum& spectrum) {
  const double lambda_max = spectrum.lambda_max();
  switch (spec.kind) {
    case BankKind::Itersine:
      return spec.adapted ? adapted_translates(spec.count, spectrum.eigenvalues)
                          : uniform_translates(spec.count, lambda_max);
    case BankKind::MexicanHat: {
      auto bank = mexican_hat_bank(lambda_max, spec.scales);
      if (!spec.adapted) return bank;
      return warp_filterbank(bank, std::make_shared<const SpectralWarp>(spectrum.eigenvalues));
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown bank kind");
}

double relative_error(const VectorXd& approx, const VectorXd& exact) {
  const double scale = exact.norm();
  const double diff = (approx - exact).norm();
  return scale > 0.0 ? diff / scale : diff;
}

OrderTrace order_trace(const SparseSymmetricOperator<double>& op, const Spectrum& spectrum,
                       const Filterbank& bank, const VectorXd& s, const std::vector<Index>& orders,
                       double chebyshev_lambda_max) {
  const Index rows = static_cast<Index>(orders.size());
  const Index cols = bank.size();
  OrderTrace trace{orders, MatrixXd(rows, cols), MatrixXd(rows, cols)};
  if (rows == 0) return trace;

  std::vector<VectorXd> exact;
  for (const auto& g : bank.filters) exact.push_back(exact_filter(spectrum, g, s));

  const Index top = *std::max_element(orders.begin(), orders.end());
  const auto basis = lanczos_basis(op, s, std::max<Index>(top, 1));
  for (Index f = 0; f < cols; ++f) {
    const auto& g = bank.filters[f];
    for (Index r = 0; r < rows; ++r) {
      const Index M = orders[r];
      const auto expansion = chebyshev_coefficients(g, chebyshev_lambda_max, M);
      trace.chebyshev(r, f) = relative_error(chebyshev_apply(op, expansion, s), exact[f]);
      trace.lanczos(r, f) = relative_error(krylov_filter(basis, g, M), exact[f]);
    }
  }
  return trace;
}

EstimateTrace estimate_trace(const SparseSymmetricOperator<double>& op, const Spectrum& spectrum,
                             const Filterbank& bank, const VectorXd& s,
                             const std::vector<Index>& orders, Index lookahead) {
  const Index rows = static_cast<Index>(orders.size());
  const Index cols = bank.size();
  EstimateTrace trace{orders, MatrixXd(rows, cols), MatrixXd(rows, cols)};
  if (rows == 0) return trace;

  const Index top = *std::max_element(orders.begin(), orders.end());
  const auto basis = lanczos_basis(op, s, top + lookahead);
  for (Index f = 0; f < cols; ++f) {
    const auto& g = bank.filters[f];
    const VectorXd exact = exact_filter(spectrum, g, s);
    const double scale = exact.norm() > 0.0 ? exact.norm() : 1.0;
    for (Index r = 0; r < rows; ++r) {
      const Index M = orders[r];
      const VectorXd current = krylov_filter(basis, g, M);
      const VectorXd ahead = krylov_filter(basis, g, M + lookahead);
      trace.true_error(r, f) = (current - exact).norm() / scale;
      trace.estimate(r, f) = (ahead - current).norm() / scale;
    }
  }
  return trace;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
  if (graph.n < 2) fail("graph n must be >= 2");
  if (graph.family == GraphFamily::ErdosRenyi && !(graph.p >= 0.0 && graph.p <= 1.0))
    throw Error(ErrorCode::InvalidProbability, "p = " + std::to_string(graph.p));
  if (graph.family == GraphFamily::Sensor && (graph.k < 1 || graph.k >= graph.n))
    throw Error(ErrorCode::InvalidK, "need n > k >= 1");
  if (bank.kind == BankKind::Itersine && bank.count < 2) fail("itersine bank needs count >= 2");
  if (bank.kind == BankKind::MexicanHat && bank.scales < 1) fail("mexican-hat bank needs scales >= 1");
  if (!chebyshev && !lanczos) fail("no method selected");
  if (order_min < 1) fail("order_min must be >= 1");
  if (order_min > order_max) fail("order_min > order_max");
  if (order_step < 1) fail("order_step must be >= 1");
  if (!(eps > 0.0)) fail("eps must be positive");
  if (lookahead < 1) fail("lookahead j must be >= 1");
  if (signals < 1) fail("signals must be >= 1");
  if (seeds < 1) fail("seeds must be >= 1");
  if (threads < 1) fail("threads must be >= 1");
  if (command == "error-vs-p") {
    if (p_list.empty()) fail("p_list is empty");
    for (double p : p_list)
      if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidProbability, "p = " + std::to_string(p));
  }
  if (graph.n > oracle_cap)
    throw Error(ErrorCode::TooLargeForOracle, "n = " + std::to_string(graph.n) +
                                                  " exceeds the oracle cap " + std::to_string(oracle_cap));
}

std::vector<Index> ExperimentConfig::orders() const {
  std::vector<Index> out;
  for (Index m = order_min; m <= order_max; m += order_step) out.push_back(m);
  return out;
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "command=" << command << '\n';
  os << "graph.family=" << (graph.family == GraphFamily::ErdosRenyi ? "er" : "sensor") << '\n';
  os << "graph.n=" << graph.n << '\n';
  if (graph.family == GraphFamily::ErdosRenyi)
    os << "graph.p=" << graph.p << '\n';
  else
    os << "graph.k=" << graph.k << '\n';
  os << "graph.seed=" << graph.seed << '\n';
  os << "bank.kind=" << (bank.kind == BankKind::Itersine ? "itersine" : "mexican_hat") << '\n';
  if (bank.kind == BankKind::Itersine)
    os << "bank.count=" << bank.count << '\n';
  else
    os << "bank.scales=" << bank.scales << '\n';
  os << "bank.adapted=" << (bank.adapted ? 1 : 0) << '\n';
  os << "methods=" << (chebyshev ? "chebyshev" : "") << (chebyshev && lanczos ? "," : "")
     << (lanczos ? "lanczos" : "") << '\n';
  os << "order_min=" << order_min << '\n';
  os << "order_max=" << order_max << '\n';
  os << "order_step=" << order_step << '\n';
  os << "eps=" << eps << '\n';
  os << "j=" << lookahead << '\n';
  os << "signals=" << signals << '\n';
  if (command == "error-vs-p") {
    os << "seeds=" << seeds << '\n';
    os << "p_list=";
    for (std::size_t k = 0; k < p_list.size(); ++k) os << (k ? "," : "") << p_list[k];
    os << '\n';
  }
  os << "oracle_cap=" << oracle_cap << '\n';
  return os.str();
}

void parallel_for(Index count, Index threads, const std::function<void(Index)>& body) {
  threads = std::clamp<Index>(threads, 1, std::max<Index>(count, 1));
  if (threads == 1) {
    for (Index k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (Index t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (Index k = next++; k < count; k = next++) {
          try {
            body(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

struct Problem {
  SparseSymmetricOperator<double> op;
  Spectrum spectrum;
  Filterbank bank;
  double chebyshev_lambda_max = 0.0;
};

Problem make_problem(const GraphSpec& graph, const BankSpec& bank, Index oracle_cap) {
  Problem p;
  p.op = combinatorial_laplacian(make_graph(graph));
  p.spectrum = full_eigendecomposition(p.op, oracle_cap);
  p.bank = make_bank(bank, p.spectrum);
  p.chebyshev_lambda_max = estimate_lambda_max(p.op);
  return p;
}

double gap_ratio(const VectorXd& eigenvalues) {
  const Index n = eigenvalues.size();
  if (n < 2) return 0.0;
  const double lambda_max = eigenvalues[n - 1];
  if (!(lambda_max > 0.0)) return 0.0;
  for (Index k = 0; k < n; ++k)
    if (eigenvalues[k] > 1e-8 * lambda_max) return eigenvalues[k] / lambda_max;
  return 0.0;
}

}  // namespace

std::vector<OrderRow> run_error_vs_order(const ExperimentConfig& config) {
  config.validate();
  const auto problem = make_problem(config.graph, config.bank, config.oracle_cap);
  const auto orders = config.orders();
  std::vector<OrderTrace> traces(static_cast<std::size_t>(config.signals));
  parallel_for(config.signals, config.threads, [&](Index i) {
    const VectorXd s = random_unit_signal(problem.op.size(), RngSeed{config.graph.seed},
                                          static_cast<std::uint64_t>(i));
    traces[i] = order_trace(problem.op, problem.spectrum, problem.bank, s, orders,
                            problem.chebyshev_lambda_max);
  });

  const double inv = 1.0 / static_cast<double>(config.signals);
  std::vector<OrderRow> rows;
  for (std::size_t r = 0; r < orders.size(); ++r) {
    OrderRow row;
    row.order = orders[r];
    row.chebyshev_per_filter.assign(problem.bank.filters.size(), 0.0);
    row.lanczos_per_filter.assign(problem.bank.filters.size(), 0.0);
    for (const auto& t : traces) {
      const auto ri = static_cast<Index>(r);
      row.chebyshev_error += inv * t.chebyshev.row(ri).maxCoeff();
      row.lanczos_error += inv * t.lanczos.row(ri).maxCoeff();
      for (Index f = 0; f < problem.bank.size(); ++f) {
        row.chebyshev_per_filter[f] += inv * t.chebyshev(ri, f);
        row.lanczos_per_filter[f] += inv * t.lanczos(ri, f);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<EstimateRow> run_error_vs_estimate(const ExperimentConfig& config) {
  config.validate();
  const auto problem = make_problem(config.graph, config.bank, config.oracle_cap);
  const auto orders = config.orders();
  std::vector<EstimateTrace> traces(static_cast<std::size_t>(config.signals));
  parallel_for(config.signals, config.threads, [&](Index i) {
    const VectorXd s = random_unit_signal(problem.op.size(), RngSeed{config.graph.seed},
                                          static_cast<std::uint64_t>(i));
    traces[i] = estimate_trace(problem.op, problem.spectrum, problem.bank, s, orders, config.lookahead);
  });

  const double inv = 1.0 / static_cast<double>(config.signals);
  std::vector<EstimateRow> rows;
  for (std::size_t r = 0; r < orders.size(); ++r) {
    EstimateRow row;
    row.order = orders[r];
    row.true_per_filter.assign(problem.bank.filters.size(), 0.0);
    row.estimate_per_filter.assign(problem.bank.filters.size(), 0.0);
    for (const auto& t : traces) {
      const auto ri = static_cast<Index>(r);
      row.true_error += inv * t.true_error.row(ri).maxCoeff();
      row.estimate += inv * t.estimate.row(ri).maxCoeff();
      for (Index f = 0; f < problem.bank.size(); ++f) {
        row.true_per_filter[f] += inv * t.true_error(ri, f);
        row.estimate_per_filter[f] += inv * t.estimate(ri, f);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ProbabilityRow> run_error_vs_p(const ExperimentConfig& config) {
  config.validate();
  const Index num_p = static_cast<Index>(config.p_list.size());
  const Index cells = num_p * config.seeds;
  const std::vector<Index> order{config.order_max};
  struct Cell {
    double chebyshev = 0.0, lanczos = 0.0, gap = 0.0;
  };
  std::vector<Cell> results(static_cast<std::size_t>(cells));

  parallel_for(cells, config.threads, [&](Index cell) {
    GraphSpec graph = config.graph;
    graph.family = GraphFamily::ErdosRenyi;
    graph.p = config.p_list[cell / config.seeds];
    graph.seed = config.graph.seed + static_cast<std::uint64_t>(cell % config.seeds);
    const auto problem = make_problem(graph, config.bank, config.oracle_cap);
    Cell out;
    out.gap = gap_ratio(problem.spectrum.eigenvalues);
    const double inv = 1.0 / static_cast<double>(config.signals);
    for (Index i = 0; i < config.signals; ++i) {
      const VectorXd s = random_unit_signal(problem.op.size(), RngSeed{graph.seed},
                                            static_cast<std::uint64_t>(i));
      const auto t = order_trace(problem.op, problem.spectrum, problem.bank, s, order,
                                 problem.chebyshev_lambda_max);
      out.chebyshev += inv * t.chebyshev.row(0).maxCoeff();
      out.lanczos += inv * t.lanczos.row(0).maxCoeff();
    }
    results[cell] = out;
  });

  std::vector<ProbabilityRow> rows;
  for (Index ip = 0; ip < num_p; ++ip) {
    std::vector<double> cheb, lan, gap;
    for (Index s = 0; s < config.seeds; ++s) {
      const auto& c = results[ip * config.seeds + s];
      cheb.push_back(c.chebyshev);
      lan.push_back(c.lanczos);
      gap.push_back(c.gap);
    }
    rows.push_back({config.p_list[ip], median(cheb), median(lan), median(gap)});
  }
  return rows;
}

SpectrumReport spectrum_histogram(const Graph& g, Index bins, Index oracle_cap) {
  if (bins < 1) throw Error(ErrorCode::InvalidConfig, "bins must be >= 1");
  SpectrumReport report;
  report.eigenvalues = full_eigendecomposition(combinatorial_laplacian(g), oracle_cap).eigenvalues;
  const Index n = report.eigenvalues.size();
  const double top = n ? std::max(report.eigenvalues[n - 1], 0.0) : 0.0;
  const double width = top > 0.0 ? top / static_cast<double>(bins) : 1.0;
  for (Index b = 0; b <= bins; ++b) report.bin_edges.push_back(width * static_cast<double>(b));
  report.counts.assign(static_cast<std::size_t>(bins), 0);
  for (Index k = 0; k < n; ++k) {
    const auto b = std::clamp<Index>(static_cast<Index>(std::max(report.eigenvalues[k], 0.0) / width), 0, bins - 1);
    ++report.counts[b];
  }
  report.gap_ratio = gap_ratio(report.eigenvalues);
  return report;
}

namespace {

void write_header(std::ostream& out, const std::string& body) {
  out << "# gsp " << kVersion << '\n';
  std::istringstream lines(body);
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<OrderRow>& rows) {
  write_header(out, config.serialize());
  out << std::setprecision(17);
  const std::size_t filters = rows.empty() ? 0 : rows.front().lanczos_per_filter.size();
  out << "order";
  if (config.chebyshev) out << ",chebyshev_error";
  if (config.lanczos) out << ",lanczos_error";
  for (std::size_t f = 0; f < filters; ++f) {
    if (config.chebyshev) out << ",chebyshev_f" << f;
    if (config.lanczos) out << ",lanczos_f" << f;
  }
  out << '\n';
  for (const auto& r : rows) {
    out << r.order;
    if (config.chebyshev) out << ',' << r.chebyshev_error;
    if (config.lanczos) out << ',' << r.lanczos_error;
    for (std::size_t f = 0; f < filters; ++f) {
      if (config.chebyshev) out << ',' << r.chebyshev_per_filter[f];
      if (config.lanczos) out << ',' << r.lanczos_per_filter[f];
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<EstimateRow>& rows) {
  write_header(out, config.serialize());
  out << std::setprecision(17);
  const std::size_t filters = rows.empty() ? 0 : rows.front().true_per_filter.size();
  out << "order,true_error,estimate";
  for (std::size_t f = 0; f < filters; ++f) out << ",true_f" << f << ",estimate_f" << f;
  out << '\n';
  for (const auto& r : rows) {
    out << r.order << ',' << r.true_error << ',' << r.estimate;
    for (std::size_t f = 0; f < filters; ++f)
      out << ',' << r.true_per_filter[f] << ',' << r.estimate_per_filter[f];
    out << '\n';
  }
}

void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<ProbabilityRow>& rows) {
  write_header(out, config.serialize());
  out << std::setprecision(17);
  out << 'p';
  if (config.chebyshev) out << ",chebyshev_error";
  if (config.lanczos) out << ",lanczos_error";
  out << ",gap_ratio\n";
  for (const auto& r : rows) {
    out << r.p;
    if (config.chebyshev) out << ',' << r.chebyshev_error;
    if (config.lanczos) out << ',' << r.lanczos_error;
    out << ',' << r.gap_ratio << '\n';
  }
}

void write_csv(std::ostream& out, const std::string& graph_source, const SpectrumReport& report) {
  write_header(out, "command=spectrum\ngraph=" + graph_source);
  out << std::setprecision(17);
  out << "# gap_ratio=" << report.gap_ratio << '\n';
  out << "section,index,value,count\n";
  for (Index k = 0; k < report.eigenvalues.size(); ++k)
    out << "eigenvalue," << k << ',' << report.eigenvalues[k] << ",\n";
  for (std::size_t b = 0; b < report.counts.size(); ++b)
    out << "bin," << b << ',' << report.bin_edges[b] << ',' << report.counts[b] << '\n';
}

}  // namespace gsp
