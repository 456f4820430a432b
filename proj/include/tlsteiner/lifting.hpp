#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tlsteiner/geometry.hpp"
#include "tlsteiner/model.hpp"

namespace tlsteiner {

/// Terminal x of P_i placed at (x, K e_i); layer 0 is the top level.
struct LiftedPoint {
  Point base;
  std::size_t layer = 0;

  friend bool operator==(const LiftedPoint&, const LiftedPoint&) = default;
};

/// Lifted terminal set for k >= 2. Throws if K is below the semiperimeter
/// of the instance's bounding box or k < 2.
std::vector<LiftedPoint> lift_instance(const Instance& instance, const Coord& K);

/// L1 distance in R^{2+k}: plane distance plus 2K across different layers.
Coord lifted_dist(const LiftedPoint& a, const LiftedPoint& b, const Coord& K);

/// Point of R^{2+k}: plane coordinates plus k lifted coordinates.
struct LiftedVertex {
  Point base;
  std::vector<Coord> lift;

  friend bool operator==(const LiftedVertex&, const LiftedVertex&) = default;
  friend auto operator<=>(const LiftedVertex&, const LiftedVertex&) = default;
};

/// Steiner tree in R^{2+k} whose edges are one-directional segments.
class LiftedTree {
 public:
  /// Direction of an edge: the base x axis, base y axis, or lifted dimension j.
  struct Direction {
    enum Kind { kBaseX, kBaseY, kLifted } kind;
    std::size_t dim = 0;
  };

  explicit LiftedTree(std::size_t k) : k_(k) {}

  std::size_t k() const { return k_; }
  const std::vector<LiftedVertex>& vertices() const { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  /// Terminal vertex indices with their group layer (1..k).
  const std::vector<std::pair<std::size_t, std::size_t>>& terminals() const { return terminals_; }

  std::size_t add_vertex(LiftedVertex v);
  std::size_t add_vertex(const Point& base, std::size_t layer, const Coord& K);
  void mark_terminal(std::size_t vertex, std::size_t layer);
  /// Adds a one-directional edge; throws std::invalid_argument otherwise.
  void add_edge(std::size_t u, std::size_t v);
  /// Joins two vertices that differ only in the plane, inserting a corner
  /// vertex when both plane coordinates differ.
  void add_plane_path(std::size_t u, std::size_t v);

  Coord length() const;
  Coord edge_length(std::size_t e) const;
  Direction direction(std::size_t e) const;

  /// 0 for the top level, i for K e_i, nullopt if the vertex is not flat.
  std::optional<std::size_t> layer_of(std::size_t v, const Coord& K) const;
  bool is_flat(const Coord& K) const;
  bool is_connected() const;
  /// Lifted terminal points (base, layer), in terminal order.
  std::vector<LiftedPoint> terminal_points() const;
  /// Number of edges running in lifted dimension j.
  std::size_t lifted_edge_count(std::size_t j) const;

  /// Merges coincident vertices, contracts zero-length edges, drops the
  /// longest edge on every cycle (ties by index), and prunes Steiner leaves.
  void compact();

 private:
  std::size_t k_;
  std::vector<LiftedVertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> terminals_;

  friend LiftedTree flatten(const LiftedTree& t, const Coord& K);
  friend LiftedTree normalize_single_edges(const LiftedTree& t, const Coord& K);
};

/// Lifts a feasible two-level tree: T_top at layer 0, T_i at layer i and
/// the edge (q_i, 0)-(q_i, K e_i) for each group. Length = l(T) + kK.
LiftedTree lift_tree(const TwoLevelTree& t, const Instance& instance, const Coord& K);

/// Per-dimension min-cut projection onto {x_j = 0} / {x_j = K}, followed by
/// remapping multi-K Steiner points to the top level. The result is flat,
/// covers every terminal and is no longer than the input.
LiftedTree flatten(const LiftedTree& t, const Coord& K);

/// Replaces duplicate edges in each lifted direction by in-hyperplane
/// reconnections until every direction has at most one edge.
LiftedTree normalize_single_edges(const LiftedTree& t, const Coord& K);

/// Splits a flat tree with exactly one edge per lifted direction at those
/// edges and projects the k+1 parts to the plane. Throws std::runtime_error
/// describing the structural violation otherwise.
TwoLevelTree project_to_two_level(const LiftedTree& t, const Coord& K);

}  // namespace tlsteiner
