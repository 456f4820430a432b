#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tlsteiner/rational.hpp"

namespace tlsteiner {

struct Point {
  Coord x;
  Coord y;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

Coord l1_dist(const Point& p, const Point& q);

/// Axis-aligned rectangle; degenerate (zero width or height) is legal.
struct Rect {
  Coord xmin, xmax, ymin, ymax;

  Coord width() const { return xmax - xmin; }
  Coord height() const { return ymax - ymin; }
  Coord semiperimeter() const { return width() + height(); }
  Coord area() const { return width() * height(); }
  Point center() const;
  bool contains(const Point& p) const;
  /// Closest point of the rectangle to p (per-axis clamp).
  Point clamp(const Point& p) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Throws std::invalid_argument("empty point set") on empty input.
Rect bounding_box(std::span<const Point> points);

struct HananGrid {
  std::vector<Coord> xs;  // sorted, distinct
  std::vector<Coord> ys;  // sorted, distinct

  std::size_t size() const { return xs.size() * ys.size(); }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * xs.size() + ix; }
  Point vertex(std::size_t idx) const { return {xs[idx % xs.size()], ys[idx / xs.size()]}; }
  bool contains(const Point& p) const;
  /// Grid index of a point known to lie on the grid.
  std::size_t index_of(const Point& p) const;
};

HananGrid hanan_grid(std::span<const Point> points);

/// Horizontal or vertical piece of an embedded edge.
struct Segment {
  Point a;
  Point b;

  bool horizontal() const { return a.y == b.y; }
  Coord length() const { return l1_dist(a, b); }
  bool contains(const Point& p) const;
  /// Unique closest point of the segment to p in L1.
  Point closest(const Point& p) const;
};

enum class Embedding {
  kHorizontalFirst,  // u -> (v.x, u.y) -> v
  kVerticalFirst,    // u -> (u.x, v.y) -> v
  kStraight,         // endpoints share a coordinate
};

struct TreeEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  Embedding embedding = Embedding::kStraight;
};

/// Rectilinear Steiner tree with explicit vertex coordinates and L-shaped
/// edge embeddings. Terminal vertices are listed in `terminals`; all other
/// vertices are Steiner points.
struct EmbeddedTree {
  std::vector<Point> vertices;
  std::vector<TreeEdge> edges;
  std::vector<std::size_t> terminals;

  static EmbeddedTree single(const Point& p);

  std::size_t add_vertex(const Point& p, bool terminal = false);
  /// Adds an edge; the embedding is forced to kStraight for aligned endpoints.
  void add_edge(std::size_t u, std::size_t v, Embedding e = Embedding::kHorizontalFirst);

  Point corner(const TreeEdge& e) const;
  /// One or two non-degenerate segments (empty for a zero-length edge).
  std::vector<Segment> segments(const TreeEdge& e) const;
  std::vector<Segment> all_segments() const;
  std::vector<Point> terminal_points() const;
  std::vector<std::vector<std::size_t>> adjacency() const;

  /// Index of a vertex at p, inserting one (splitting the edge carrying p)
  /// when p lies in the interior of an embedded edge. Returns npos if p is
  /// not on the tree.
  std::size_t ensure_vertex(const Point& p);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

Coord tree_length(const EmbeddedTree& t);

struct NearestPoint {
  Point point;
  Coord distance;
};

/// Closest point of the embedded tree to q; ties go to the lexicographically
/// smallest point.
NearestPoint nearest_point_on_tree(const EmbeddedTree& t, const Point& q);

enum class ViolationKind {
  kEdgeIndex,
  kEdgeCount,
  kNotConnected,
  kCycle,
  kBadEmbedding,
  kTerminalUncovered,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

/// Structural checks; an empty result means the tree is valid.
std::vector<Violation> validate_tree(const EmbeddedTree& t, std::span<const Point> required_terminals);

/// True if p coincides with a vertex or lies on an embedded segment.
bool tree_covers(const EmbeddedTree& t, const Point& p);

}  // namespace tlsteiner
