#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsp/core.hpp"
#include "gsp/filterbank.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectral.hpp"

namespace gsp {

inline constexpr const char* kVersion = "0.1.0";

enum class GraphFamily { ErdosRenyi, Sensor };

struct GraphSpec {
  GraphFamily family = GraphFamily::ErdosRenyi;
  Index n = 500;
  double p = 0.04;  // Erdos-Renyi only
  Index k = 6;      // sensor only
  std::uint64_t seed = 1;
};

Graph make_graph(const GraphSpec& spec);

enum class BankKind { Itersine, MexicanHat };

struct BankSpec {
  BankKind kind = BankKind::Itersine;
  Index count = 8;   // itersine translates
  Index scales = 1;  // mexican-hat wavelet scales
  bool adapted = false;
};

/// Builds the bank on [0, lambda_max] of the spectrum, or warped to its
/// spectral CDF when adapted.
Filterbank make_bank(const BankSpec& spec, const Spectrum& spectrum);

/// Relative 2-norm error ||approx - exact|| / ||exact|| (absolute when the
/// exact vector is zero).
double relative_error(const VectorXd& approx, const VectorXd& exact);

/// Errors of both methods for orders orders[i] and filters f, one signal.
/// Rows are orders, columns are filters.
struct OrderTrace {
  std::vector<Index> orders;
  MatrixXd chebyshev;
  MatrixXd lanczos;
};

/// `chebyshev_lambda_max` is the interval used by the Chebyshev expansion.
OrderTrace order_trace(const SparseSymmetricOperator<double>& op, const Spectrum& spectrum,
                       const Filterbank& bank, const VectorXd& s, const std::vector<Index>& orders,
                       double chebyshev_lambda_max);

/// True relative error of g_M and the relative estimate ||g_{M+j} - g_M|| / ||g(L)s||.
struct EstimateTrace {
  std::vector<Index> orders;
  MatrixXd true_error;
  MatrixXd estimate;
};

EstimateTrace estimate_trace(const SparseSymmetricOperator<double>& op, const Spectrum& spectrum,
                             const Filterbank& bank, const VectorXd& s,
                             const std::vector<Index>& orders, Index lookahead);

struct ExperimentConfig {
  std::string command;
  GraphSpec graph;
  BankSpec bank;
  bool chebyshev = true;
  bool lanczos = true;
  Index order_min = 1;
  Index order_max = 50;
  Index order_step = 1;
  double eps = 1e-6;
  Index lookahead = 3;
  Index signals = 10;
  Index seeds = 10;  // error-vs-p: graph seeds graph.seed, graph.seed + 1, ...
  std::vector<double> p_list;
  Index oracle_cap = kDefaultOracleCap;
  Index threads = 1;
  std::string output;

  /// Throws InvalidConfig on the first inconsistency.
  void validate() const;
  std::vector<Index> orders() const;
  /// `key=value` lines; exactly what goes into a CSV header.
  std::string serialize() const;
};

struct OrderRow {
  Index order = 0;
  double chebyshev_error = 0.0;  // max over bank, mean over signals
  double lanczos_error = 0.0;
  std::vector<double> chebyshev_per_filter;
  std::vector<double> lanczos_per_filter;
};

struct EstimateRow {
  Index order = 0;
  double true_error = 0.0;  // max over bank, mean over signals
  double estimate = 0.0;
  std::vector<double> true_per_filter;
  std::vector<double> estimate_per_filter;
};

struct ProbabilityRow {
  double p = 0.0;
  double chebyshev_error = 0.0;  // median over seeds of (mean over signals of max over bank)
  double lanczos_error = 0.0;
  double gap_ratio = 0.0;        // median lambda_1 / lambda_max
};

std::vector<OrderRow> run_error_vs_order(const ExperimentConfig& config);
std::vector<EstimateRow> run_error_vs_estimate(const ExperimentConfig& config);
std::vector<ProbabilityRow> run_error_vs_p(const ExperimentConfig& config);

struct SpectrumReport {
  VectorXd eigenvalues;
  std::vector<double> bin_edges;  // bins + 1 edges over [0, lambda_max]
  std::vector<Index> counts;
  /// lambda_1 / lambda_max, with lambda_1 the first eigenvalue above the zero
  /// cluster.
  double gap_ratio = 0.0;
};

SpectrumReport spectrum_histogram(const Graph& g, Index bins, Index oracle_cap = kDefaultOracleCap);

void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<OrderRow>& rows);
void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<EstimateRow>& rows);
void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<ProbabilityRow>& rows);
void write_csv(std::ostream& out, const std::string& graph_source, const SpectrumReport& report);

/// Runs body(0) ... body(count - 1) on up to `threads` workers. Callers write
/// results into pre-sized slots, so output order never depends on scheduling.
void parallel_for(Index count, Index threads, const std::function<void(Index)>& body);

double median(std::vector<double> values);

}  // namespace gsp
