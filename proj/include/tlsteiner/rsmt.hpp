#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tlsteiner/geometry.hpp"

namespace tlsteiner {

enum class SubroutineMode { kRmst, kExact };

/// Plane Steiner tree routine used by the two-level solvers.
///
/// `kRmst` is the rectilinear minimum spanning tree (guarantee 3/2);
/// `kExact` is the Dreyfus-Wagner oracle (guarantee 1) and refuses terminal
/// sets larger than `exact_limit`.
struct SteinerSubroutine {
  SubroutineMode mode = SubroutineMode::kRmst;
  std::size_t exact_limit = 9;
  bool steinerize = false;

  static SteinerSubroutine rmst() { return {}; }
  static SteinerSubroutine exact(std::size_t limit = 9) { return {SubroutineMode::kExact, limit, false}; }

  Rational alpha() const { return mode == SubroutineMode::kRmst ? Rational(3, 2) : Rational(1); }
  const char* name() const { return mode == SubroutineMode::kRmst ? "rmst" : "exact"; }
};

struct WeightedEdge {
  std::size_t u;
  std::size_t v;
  Coord length;
};

/// Candidate edges containing an L1 minimum spanning tree: the nearest
/// neighbour of every point in each of its octants, found with four sorted
/// sweeps. O(n log n).
std::vector<WeightedEdge> octant_candidate_edges(std::span<const Point> points);

/// Kruskal over the given edges with (length, min index, max index) order.
std::vector<WeightedEdge> kruskal(std::size_t n, std::vector<WeightedEdge> edges);

/// Rectilinear MST. Input points become the terminal vertices in order.
/// Uses all pairs for up to `kAllPairsLimit` points, the octant sweep above.
EmbeddedTree rectilinear_mst(std::span<const Point> points);

inline constexpr std::size_t kAllPairsLimit = 64;

/// Merges overlapping legs of edges that share a vertex, flipping L-shapes
/// where that increases the overlap. Never increases the length.
EmbeddedTree steinerize(const EmbeddedTree& t);

/// Steiner tree for the (deduplicated) points using the given routine.
EmbeddedTree approx_steiner(std::span<const Point> points, const SteinerSubroutine& sub);

/// Sorted, duplicate-free copy.
std::vector<Point> unique_points(std::span<const Point> points);

}  // namespace tlsteiner
