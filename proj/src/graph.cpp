#include "gsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gsp {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")";
}

}  // namespace

Graph build_graph(Index n, std::vector<Edge> edges) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
      throw Error(ErrorCode::IndexOutOfRange, "edge " + edge_str(e) + " with n = " + std::to_string(n));
    if (e.i == e.j) throw Error(ErrorCode::SelfLoop, "edge " + edge_str(e));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw Error(ErrorCode::NonPositiveWeight, "edge " + edge_str(e));
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  auto dup = std::adjacent_find(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i == b.i && a.j == b.j;
  });
  if (dup != edges.end()) throw Error(ErrorCode::DuplicateEdge, "edge " + edge_str(*dup));

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * edges.size());
  for (const auto& e : edges) {
    triplets.emplace_back(e.i, e.j, e.weight);
    triplets.emplace_back(e.j, e.i, e.weight);
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.weights_.resize(n, n);
  g.weights_.setFromTriplets(triplets.begin(), triplets.end());
  g.weights_.makeCompressed();
  return g;
}

VectorXd degree_vector(const Graph& g) {
  const auto& w = g.weights();
  VectorXd d = VectorXd::Zero(g.num_vertices());
  for (Index row = 0; row < w.outerSize(); ++row) {
    double acc = 0.0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(w, row); it; ++it)
      acc += it.value();
    d[row] = acc;
  }
  return d;
}

namespace {

// Assembles D - W row by row, with each entry passed through `entry(i, j, v)`.
template <class EntryMap>
SparseSymmetricOperator<double> assemble_laplacian(const Graph& g, const VectorXd& degrees,
                                                   EntryMap entry, OperatorKind kind) {
  const auto& w = g.weights();
  const Index n = g.num_vertices();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(w.nonZeros() + n));
  for (Index row = 0; row < n; ++row) {
    const double diag = entry(row, row, degrees[row]);
    if (diag != 0.0) triplets.emplace_back(row, row, diag);
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(w, row); it; ++it)
      triplets.emplace_back(row, it.col(), entry(row, it.col(), -it.value()));
  }
  SparseSymmetricOperator<double>::Storage m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return {std::move(m), kind};
}

}  // namespace

SparseSymmetricOperator<double> combinatorial_laplacian(const Graph& g) {
  return assemble_laplacian(
      g, degree_vector(g), [](Index, Index, double v) { return v; }, OperatorKind::Combinatorial);
}

SparseSymmetricOperator<double> normalized_laplacian(const Graph& g) {
  const VectorXd d = degree_vector(g);
  // Isolated vertices have no off-diagonal entries and get a zero diagonal.
  auto entry = [&d](Index i, Index j, double v) {
    if (i == j) return d[i] > 0.0 ? 1.0 : 0.0;
    return v / std::sqrt(d[i] * d[j]);
  };
  return assemble_laplacian(g, d, entry, OperatorKind::Normalized);
}

Index connected_components(const Graph& g) {
  std::vector<Index> parent(static_cast<std::size_t>(g.num_vertices()));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Index components = g.num_vertices();
  for (const auto& e : g.edges()) {
    const Index a = find(e.i), b = find(e.j);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

}  // namespace gsp
