#include "gsp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace gsp {

std::mt19937_64 derive_stream(RngSeed seed, RngStream stream, std::uint64_t index) {
  const auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffu); };
  const auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  const auto tag = static_cast<std::uint64_t>(stream);
  std::seed_seq seq{lo(seed.value), hi(seed.value), lo(tag), lo(index), hi(index)};
  return std::mt19937_64(seq);
}

Graph erdos_renyi(Index n, double p, RngSeed seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorCode::InvalidProbability, "p = " + std::to_string(p) + " is not in [0, 1]");
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "n must be >= 1");

  std::vector<Edge> edges;
  if (p > 0.0 && n > 1) {
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    edges.reserve(static_cast<std::size_t>(std::min(pairs, pairs * p * 1.1 + 16.0)));
    auto rng = derive_stream(seed, RngStream::Edges);
    std::geometric_distribution<long long> gap(p);
    // (row, col) walks the strict upper triangle row by row; `col` may run
    // past the end of a row and is carried into the following rows.
    Index row = 0;
    long long col = 0;
    while (true) {
      col += 1 + (p < 1.0 ? gap(rng) : 0);
      while (row < n - 1 && col >= n) {
        col -= n - (row + 2);
        ++row;
      }
      if (row >= n - 1) break;
      edges.push_back({row, static_cast<Index>(col), 1.0});
    }
  }
  return build_graph(n, std::move(edges));
}

namespace {

struct Point {
  double x, y;
};

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// k nearest neighbours of every point (excluding itself), ties broken by
// index. A uniform bucket grid is searched in growing square rings until the
// ring can no longer contain anything closer than the current k-th best.
std::vector<std::vector<std::pair<double, Index>>> knn(const std::vector<Point>& pts, Index k) {
  const Index n = static_cast<Index>(pts.size());
  const Index cells = std::max<Index>(1, static_cast<Index>(std::sqrt(static_cast<double>(n) / 2.0)));
  auto cell_of = [&](double v) {
    return std::clamp<Index>(static_cast<Index>(v * static_cast<double>(cells)), 0, cells - 1);
  };
  std::vector<std::vector<Index>> grid(static_cast<std::size_t>(cells * cells));
  for (Index i = 0; i < n; ++i) grid[cell_of(pts[i].y) * cells + cell_of(pts[i].x)].push_back(i);

  const double width = 1.0 / static_cast<double>(cells);
  std::vector<std::vector<std::pair<double, Index>>> out(static_cast<std::size_t>(n));
  std::vector<std::pair<double, Index>> cand;
  for (Index i = 0; i < n; ++i) {
    const Index cx = cell_of(pts[i].x), cy = cell_of(pts[i].y);
    cand.clear();
    for (Index ring = 0; ring <= cells; ++ring) {
      for (Index gy = cy - ring; gy <= cy + ring; ++gy) {
        for (Index gx = cx - ring; gx <= cx + ring; ++gx) {
          if (gx < 0 || gy < 0 || gx >= cells || gy >= cells) continue;
          if (std::max(std::abs(gx - cx), std::abs(gy - cy)) != ring) continue;
          for (Index j : grid[gy * cells + gx])
            if (j != i) cand.emplace_back(dist2(pts[i], pts[j]), j);
        }
      }
      if (static_cast<Index>(cand.size()) >= k) {
        std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
        // Anything outside the searched square is at least ring * width away.
        const double reach = static_cast<double>(ring) * width;
        if (cand[k - 1].first <= reach * reach) break;
      }
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    out[i].assign(cand.begin(), cand.begin() + k);
  }
  return out;
}

}  // namespace

Graph sensor_graph(Index n, RngSeed seed, const SensorOptions& opts) {
  if (opts.k < 1 || n <= opts.k)
    throw Error(ErrorCode::InvalidK, "need n > k >= 1, got n = " + std::to_string(n) +
                                         ", k = " + std::to_string(opts.k));
  auto rng = derive_stream(seed, RngStream::Coordinates);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.x = unit(rng);
    p.y = unit(rng);
  }

  const auto neighbours = knn(pts, opts.k);
  double sigma = 0.0;
  if (opts.sigma) {
    sigma = *opts.sigma;
  } else {
    for (const auto& row : neighbours)
      for (const auto& [d2, j] : row) sigma += std::sqrt(d2);
    sigma /= static_cast<double>(n * opts.k);
  }
  if (!(sigma > 0.0)) sigma = 1.0;

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n * opts.k));
  for (Index i = 0; i < n; ++i) {
    for (const auto& [d2, j] : neighbours[i]) {
      edges.push_back({std::min(i, j), std::max(i, j), std::exp(-d2 / (2.0 * sigma * sigma))});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.i == b.i && a.j == b.j; }),
              edges.end());
  // Gaussian weights underflow to zero only for pathological sigma.
  for (auto& e : edges) e.weight = std::max(e.weight, std::numeric_limits<double>::min());
  return build_graph(n, std::move(edges));
}

VectorXd random_unit_signal(Index n, RngSeed seed, std::uint64_t index) {
  auto rng = derive_stream(seed, RngStream::Signals, index);
  std::normal_distribution<double> normal;
  VectorXd s(n);
  for (Index k = 0; k < n; ++k) s[k] = normal(rng);
  const double norm = s.norm();
  return norm > 0.0 ? VectorXd(s / norm) : VectorXd(VectorXd::Ones(n) / std::sqrt(double(n)));
}

}  // namespace gsp
