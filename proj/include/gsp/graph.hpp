#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "gsp/core.hpp"
#include "gsp/sparse_operator.hpp"

namespace gsp {

struct Edge {
  Index i = 0;
  Index j = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected graph without self-loops. Edges are stored once with
/// i < j in lexicographic order; the symmetric weight matrix is kept alongside
/// in compressed row form.
class Graph {
 public:
  Graph() = default;

  Index num_vertices() const { return n_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& weights() const { return weights_; }

  friend Graph build_graph(Index n, std::vector<Edge> edges);

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> weights_;
};

/// Validates and canonicalizes an edge list. Edges may be given in either
/// orientation; (i, j) and (j, i) are the same edge and listing both is a
/// DuplicateEdge.
Graph build_graph(Index n, std::vector<Edge> edges);

/// d(i) = sum_j W_ij, accumulated in ascending neighbor order.
VectorXd degree_vector(const Graph& g);

/// L = D - W.
SparseSymmetricOperator<double> combinatorial_laplacian(const Graph& g);

/// D^{-1/2} (D - W) D^{-1/2}, with D^{-1/2}_ii = 0 for isolated vertices.
SparseSymmetricOperator<double> normalized_laplacian(const Graph& g);

/// Number of connected components (union-find over the edge list).
Index connected_components(const Graph& g);

}  // namespace gsp
