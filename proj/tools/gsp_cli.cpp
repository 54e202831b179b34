// gsp: graph-signal filtering with Chebyshev and Lanczos approximations.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsp/bench.hpp"
#include "gsp/filtering.hpp"
#include "gsp/generators.hpp"
#include "gsp/io.hpp"

namespace {

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string out;
  gsp::Index threads = 1;
  gsp::Index oracle_cap = gsp::kDefaultOracleCap;
};

// Writes to the --out path, or stdout when it is empty or "-".
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw gsp::Error(gsp::ErrorCode::IoError, "cannot open '" + path + "' for writing");
  fn(out);
  if (!out) throw gsp::Error(gsp::ErrorCode::IoError, "write to '" + path + "' failed");
}

gsp::BankKind parse_bank_kind(const std::string& name) {
  if (name == "itersine") return gsp::BankKind::Itersine;
  if (name == "mexican_hat" || name == "mexican-hat") return gsp::BankKind::MexicanHat;
  throw gsp::Error(gsp::ErrorCode::InvalidConfig, "unknown bank '" + name + "'");
}

struct FilterCommand {
  std::string graph_path;
  std::string signal_path;
  std::string bank = "itersine";
  std::string bank_file;
  gsp::Index count = 8;
  gsp::Index scales = 1;
  bool adapted = false;
  double value = 1.0;
  double tau = 1.0;
  std::string method = "lanczos";
  std::optional<gsp::Index> order;
  double eps = 1e-6;
  gsp::Index lookahead = 3;
  gsp::Index max_order = 200;
  bool check = false;
};

int run_filter(const FilterCommand& cmd, const GlobalOptions& global) {
  const auto method = gsp::parse_method(cmd.method);
  const gsp::Graph graph = gsp::read_edge_list_file(cmd.graph_path);
  const gsp::VectorXd s = gsp::read_signal_file(cmd.signal_path);
  gsp::require_same_size(graph.num_vertices(), s.size(), "signal");
  const auto op = gsp::combinatorial_laplacian(graph);

  // The oracle is only computed when something needs it.
  std::optional<gsp::Spectrum> spectrum;
  auto need_spectrum = [&]() -> const gsp::Spectrum& {
    if (!spectrum) spectrum = gsp::full_eigendecomposition(op, global.oracle_cap);
    return *spectrum;
  };
  if (method == gsp::Method::Exact) need_spectrum();

  gsp::Filterbank bank;
  if (!cmd.bank_file.empty()) {
    const std::string text = gsp::read_text_file(cmd.bank_file);
    std::shared_ptr<const gsp::SpectralWarp> warp;
    if (text.find("adapted=1") != std::string::npos)
      warp = std::make_shared<const gsp::SpectralWarp>(need_spectrum().eigenvalues);
    bank = gsp::parse_filterbank(text, warp);
  } else if (cmd.bank == "constant") {
    bank = {{gsp::constant_filter(cmd.value)}, 0.0, false};
  } else if (cmd.bank == "heat") {
    bank = {{gsp::heat_filter(cmd.tau)}, 0.0, false};
  } else {
    gsp::BankSpec spec{parse_bank_kind(cmd.bank), cmd.count, cmd.scales, cmd.adapted};
    if (cmd.adapted) {
      bank = gsp::make_bank(spec, need_spectrum());
    } else {
      const double lambda_max = spectrum ? spectrum->lambda_max() : gsp::estimate_lambda_max(op);
      bank = spec.kind == gsp::BankKind::Itersine ? gsp::uniform_translates(spec.count, lambda_max)
                                                  : gsp::mexican_hat_bank(lambda_max, spec.scales);
    }
  }

  std::vector<gsp::VectorXd> outputs;
  if (method == gsp::Method::Lanczos && !cmd.order) {
    gsp::AdaptiveOptions opts{cmd.eps, cmd.lookahead, cmd.max_order, 1};
    for (const auto& g : bank.filters) {
      const auto result = gsp::lanczos_filter_adaptive(op, g, s, opts);
      std::cerr << g.name() << ": order " << result.order_used << " (basis " << result.basis_size
                << "), converged=" << (result.converged ? "yes" : "no") << '\n';
      outputs.push_back(result.approximation);
    }
  } else {
    gsp::FilterbankApplyOptions opts;
    opts.order = cmd.order.value_or(30);
    opts.spectrum = spectrum ? &*spectrum : nullptr;
    opts.oracle_cap = global.oracle_cap;
    outputs = gsp::filterbank_apply(method, op, bank, s, opts);
  }

  const std::string prefix = global.out.empty() ? "filtered" : global.out;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    const std::string path = prefix + "." + std::to_string(k) + ".txt";
    gsp::write_signal_file(path, outputs[k]);
    std::cerr << "wrote " << path << '\n';
  }

  if (cmd.check) {
    const auto& exact_spectrum = need_spectrum();
    for (std::size_t k = 0; k < outputs.size(); ++k) {
      const auto exact = gsp::exact_filter(exact_spectrum, bank.filters[k], s);
      std::cout << "filter " << k << ' ' << bank.filters[k].name()
                << " relative_error=" << gsp::relative_error(outputs[k], exact) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-signal filtering: Chebyshev vs Lanczos approximations of g(L)s"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Random seed")->capture_default_str();
  app.add_option("--out", global.out, "Output path (CSV/edge list) or prefix (filter)");
  app.add_option("--threads", global.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--oracle-cap", global.oracle_cap, "Largest n for the dense eigensolver")->capture_default_str();

  // generate
  auto* generate = app.add_subcommand("generate", "Write a random graph as an edge list");
  std::string family;
  gsp::Index gen_n = 500, gen_k = 6;
  double gen_p = 0.04;
  generate->add_option("family", family, "er | sensor")->required()->check(CLI::IsMember({"er", "sensor"}));
  generate->add_option("--n", gen_n, "Vertex count")->capture_default_str();
  generate->add_option("--p", gen_p, "Edge probability (er)")->capture_default_str();
  generate->add_option("--k", gen_k, "Nearest neighbours (sensor)")->capture_default_str();

  // filter
  auto* filter = app.add_subcommand("filter", "Filter a signal with a filterbank");
  FilterCommand fcmd;
  filter->add_option("--graph", fcmd.graph_path, "Edge-list file")->required();
  filter->add_option("--signal", fcmd.signal_path, "Signal file")->required();
  filter->add_option("--bank", fcmd.bank, "itersine | mexican_hat | constant | heat")->capture_default_str();
  filter->add_option("--bank-file", fcmd.bank_file, "Filterbank description file");
  filter->add_option("--count", fcmd.count, "Itersine translates")->capture_default_str();
  filter->add_option("--scales", fcmd.scales, "Mexican-hat scales")->capture_default_str();
  filter->add_flag("--adapted", fcmd.adapted, "Warp the bank to the spectrum (uses the oracle)");
  filter->add_option("--value", fcmd.value, "Constant filter value")->capture_default_str();
  filter->add_option("--tau", fcmd.tau, "Heat filter rate")->capture_default_str();
  filter->add_option("--method", fcmd.method, "exact | chebyshev | lanczos")->capture_default_str();
  filter->add_option("--order", fcmd.order, "Fixed order M (lanczos without it is adaptive)");
  filter->add_option("--eps", fcmd.eps, "Adaptive Lanczos tolerance")->capture_default_str();
  filter->add_option("--j", fcmd.lookahead, "Adaptive Lanczos look-ahead")->capture_default_str();
  filter->add_option("--max-order", fcmd.max_order, "Adaptive Lanczos order cap")->capture_default_str();
  filter->add_flag("--check", fcmd.check, "Report relative error against the exact oracle");

  // bench
  auto* bench = app.add_subcommand("bench", "Accuracy experiments (CSV)");
  bench->require_subcommand(1);
  bench->fallthrough();
  gsp::ExperimentConfig config;
  std::string graph_family = "er", bank_name = "itersine", methods = "both";
  auto add_common = [&](CLI::App* cmd) {
    cmd->fallthrough();
    cmd->add_option("--graph", graph_family, "er | sensor")->capture_default_str()->check(CLI::IsMember({"er", "sensor"}));
    cmd->add_option("--n", config.graph.n, "Vertex count")->capture_default_str();
    cmd->add_option("--p", config.graph.p, "Edge probability (er)")->capture_default_str();
    cmd->add_option("--k", config.graph.k, "Nearest neighbours (sensor)")->capture_default_str();
    cmd->add_option("--bank", bank_name, "itersine | mexican_hat")->capture_default_str();
    cmd->add_option("--count", config.bank.count, "Itersine translates")->capture_default_str();
    cmd->add_option("--scales", config.bank.scales, "Mexican-hat scales")->capture_default_str();
    cmd->add_flag("--adapted", config.bank.adapted, "Spectrum-adapted bank");
    cmd->add_option("--signals", config.signals, "Random signals averaged")->capture_default_str();
  };
  auto* vs_order = bench->add_subcommand("error-vs-order", "Error of both methods against order M");
  add_common(vs_order);
  vs_order->add_option("--method", methods, "chebyshev | lanczos | both")->capture_default_str()
      ->check(CLI::IsMember({"chebyshev", "lanczos", "both"}));
  vs_order->add_option("--m-min", config.order_min)->capture_default_str();
  vs_order->add_option("--m-max", config.order_max)->capture_default_str();
  vs_order->add_option("--m-step", config.order_step)->capture_default_str();

  auto* vs_estimate = bench->add_subcommand("error-vs-estimate", "Lanczos error and its look-ahead estimate");
  add_common(vs_estimate);
  vs_estimate->add_option("--m-min", config.order_min)->capture_default_str();
  vs_estimate->add_option("--m-max", config.order_max)->capture_default_str();
  vs_estimate->add_option("--m-step", config.order_step)->capture_default_str();
  vs_estimate->add_option("--j", config.lookahead, "Look-ahead j")->capture_default_str();

  auto* vs_p = bench->add_subcommand("error-vs-p", "Error at fixed order against Erdos-Renyi p");
  add_common(vs_p);
  vs_p->add_option("--method", methods, "chebyshev | lanczos | both")->capture_default_str()
      ->check(CLI::IsMember({"chebyshev", "lanczos", "both"}));
  vs_p->add_option("--order", config.order_max, "Fixed order M")->capture_default_str();
  vs_p->add_option("--p-list", config.p_list, "Probabilities")->delimiter(',');
  vs_p->add_option("--seeds", config.seeds, "Graph seeds per p")->capture_default_str();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues and histogram (CSV)");
  std::string spectrum_graph;
  gsp::Index bins = 50;
  spectrum->add_option("--graph", spectrum_graph, "Edge-list file")->required();
  spectrum->add_option("--bins", bins, "Histogram bins")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      const gsp::GraphSpec spec{family == "er" ? gsp::GraphFamily::ErdosRenyi : gsp::GraphFamily::Sensor,
                                gen_n, gen_p, gen_k, global.seed};
      const gsp::Graph g = gsp::make_graph(spec);
      with_output(global.out, [&](std::ostream& os) { gsp::write_edge_list(os, g); });
      std::cerr << "generated " << family << " graph: n=" << g.num_vertices()
                << " edges=" << g.num_edges() << " components=" << gsp::connected_components(g) << '\n';
      return 0;
    }
    if (*filter) return run_filter(fcmd, global);
    if (*spectrum) {
      const auto report = gsp::spectrum_histogram(gsp::read_edge_list_file(spectrum_graph), bins, global.oracle_cap);
      with_output(global.out, [&](std::ostream& os) { gsp::write_csv(os, spectrum_graph, report); });
      std::cerr << "gap ratio lambda_1/lambda_max = " << report.gap_ratio << '\n';
      return 0;
    }
    if (*bench) {
      config.graph.family = graph_family == "er" ? gsp::GraphFamily::ErdosRenyi : gsp::GraphFamily::Sensor;
      config.graph.seed = global.seed;
      config.bank.kind = parse_bank_kind(bank_name);
      config.chebyshev = methods != "lanczos";
      config.lanczos = methods != "chebyshev";
      config.threads = global.threads;
      config.oracle_cap = global.oracle_cap;
      config.output = global.out;
      if (*vs_order) {
        config.command = "error-vs-order";
        const auto rows = gsp::run_error_vs_order(config);
        with_output(global.out, [&](std::ostream& os) { gsp::write_csv(os, config, rows); });
      } else if (*vs_estimate) {
        config.command = "error-vs-estimate";
        const auto rows = gsp::run_error_vs_estimate(config);
        with_output(global.out, [&](std::ostream& os) { gsp::write_csv(os, config, rows); });
      } else if (*vs_p) {
        config.command = "error-vs-p";
        config.graph.family = gsp::GraphFamily::ErdosRenyi;
        config.order_min = 1;
        const auto rows = gsp::run_error_vs_p(config);
        with_output(global.out, [&](std::ostream& os) { gsp::write_csv(os, config, rows); });
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
