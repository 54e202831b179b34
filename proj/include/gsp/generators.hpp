#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "gsp/core.hpp"
#include "gsp/graph.hpp"

namespace gsp {

/// Seed for the random graph and signal generators. Each generator derives
/// independent sub-streams from it with derive_stream().
struct RngSeed {
  std::uint64_t value = 0;
};

/// Stream identifiers for derive_stream().
enum class RngStream : std::uint64_t { Edges = 1, Coordinates = 2, Signals = 3 };

/// A std::mt19937_64 seeded from (seed, stream) through std::seed_seq, so the
/// same pair always yields the same sequence.
std::mt19937_64 derive_stream(RngSeed seed, RngStream stream, std::uint64_t index = 0);

/// G(n, p): every unordered pair {i, j} is an edge with probability p, weight 1.
/// Pairs are visited in lexicographic order using geometric skips between
/// successive edges, so the cost is O(n + |E|) rather than O(n^2).
Graph erdos_renyi(Index n, double p, RngSeed seed);

struct SensorOptions {
  Index k = 6;
  /// Gaussian kernel width; the mean k-NN distance when unset.
  std::optional<double> sigma;
};

/// Random geometric sensor network: n uniform points in the unit square,
/// each joined to its k nearest neighbours (union-symmetrized), weights
/// exp(-d^2 / (2 sigma^2)).
Graph sensor_graph(Index n, RngSeed seed, const SensorOptions& opts = {});

/// Standard normal vector scaled to unit norm, from the Signals stream.
VectorXd random_unit_signal(Index n, RngSeed seed, std::uint64_t index = 0);

}  // namespace gsp
