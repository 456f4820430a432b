#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tlsteiner/geometry.hpp"
#include "tlsteiner/model.hpp"

namespace tlsteiner {

/// Weighted undirected graph whose vertices are plane points on a layer.
struct GridGraph {
  struct Arc {
    std::size_t to;
    Coord weight;
  };

  std::vector<Point> points;
  std::vector<std::size_t> layers;
  std::vector<std::vector<Arc>> adjacency;

  std::size_t size() const { return points.size(); }
  std::size_t add_vertex(const Point& p, std::size_t layer = 0);
  void add_edge(std::size_t u, std::size_t v, const Coord& w);
};

/// Hanan grid of `points` as a single-layer grid graph, vertex index as in
/// HananGrid::index.
GridGraph hanan_grid_graph(const HananGrid& grid);

/// k+1 copies of the Hanan grid; vertex (layer, g) has index layer * |grid| + g
/// and (0, g)-(i, g) edges of weight K join the top copy to copy i.
GridGraph layered_grid_graph(const HananGrid& grid, std::size_t k, const Coord& K);

struct GraphSteinerTree {
  Coord length;
  std::vector<std::size_t> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Dreyfus-Wagner minimum Steiner tree. Terminals must be distinct vertices.
GraphSteinerTree dreyfus_wagner(const GridGraph& graph, std::span<const std::size_t> terminals);

inline constexpr std::size_t kDefaultExactLimit = 9;
inline constexpr std::size_t kDefaultExactMaxGroups = 4;

/// Minimum rectilinear Steiner tree on the Hanan grid. Throws
/// std::length_error when there are more than `limit` distinct points.
EmbeddedTree exact_rsmt(std::span<const Point> points, std::size_t limit = kDefaultExactLimit);

struct ExactTwoLevel {
  TwoLevelTree tree;
  Coord length;
};

/// Optimum two-level tree from the layered Hanan grid graph with
/// K = semiperimeter + 1. Throws std::length_error above `limit` terminals
/// or `max_groups` groups.
ExactTwoLevel exact_two_level(const Instance& instance, std::size_t limit = kDefaultExactLimit,
                              std::size_t max_groups = kDefaultExactMaxGroups);

/// ceil(sqrt(k - 2)) / 2 + 3/4. Throws std::invalid_argument for k < 2.
Rational u_bound(std::size_t k);

}  // namespace tlsteiner
