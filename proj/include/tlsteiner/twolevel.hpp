#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tlsteiner/geometry.hpp"
#include "tlsteiner/model.hpp"
#include "tlsteiner/rsmt.hpp"

namespace tlsteiner {

/// Builds T_top on the given q_i and each T_i on P_i + q_i with `sub`.
/// Throws std::invalid_argument if |q| != k.
TwoLevelTree solve_with_connection_points(const Instance& instance, std::span<const Point> q,
                                          const SteinerSubroutine& sub);

/// q_i = lexicographically smallest point of P_i.
TwoLevelTree solve_simple(const Instance& instance, const SteinerSubroutine& sub);

Point bbox_center_point(std::span<const Point> group);

/// Every closed quadrant around the bbox center holds a point of the group.
bool is_complete(std::span<const Point> group);

/// Axis isometry about the bbox center: translate to the origin, optionally
/// swap x and y, then scale each axis by +-1.
struct CanonicalFrame {
  Point center;
  bool swap = false;
  int sx = 1;
  int sy = 1;

  Point apply(const Point& p) const;
  Point inverse(const Point& p) const;
  const char* name() const;
};

/// The 8 isometries in the order canonicalize tries them.
std::array<CanonicalFrame, 8> frame_candidates(const Point& center);

struct Canonical {
  CanonicalFrame frame;
  std::vector<Point> points;
};

/// First frame with an empty open lower-left quadrant and width >= height.
/// Throws std::invalid_argument for a complete group.
Canonical canonicalize(std::span<const Point> group);

struct Thresholds {
  Coord t1;
  Coord t2;
  Coord tmax;
  Coord t;
  Rational beta;
};

/// Diagonal offsets for a group given in canonical coordinates.
Thresholds thresholds(std::span<const Point> canonical_points, const Rational& beta);

/// Bbox center for complete groups, else the center moved by (t, t) in the
/// canonical frame.
Point adjusted_connection_point(std::span<const Point> group, const Rational& beta);

/// Shorter of sub(P_i + q) and sub(P_i) re-embedded towards q plus a link
/// from q to its nearest tree point. Ties keep sub(P_i + q).
EmbeddedTree refine_subtree(std::span<const Point> group, const Point& q, const SteinerSubroutine& sub);

/// Throws std::invalid_argument unless 0 <= beta <= 1.
TwoLevelTree solve_adjusted(const Instance& instance, const Rational& beta, const SteinerSubroutine& sub);

TwoLevelTree solve_bbox_center(const Instance& instance, const SteinerSubroutine& sub);

struct FactorSpec {
  Rational alpha;
  Rational beta;
  std::array<Rational, 3> terms;
  Rational value;
};

/// max{11/8 a + 1/4, 11/8 a + 3/8 a b, 3/2 a - b/4 + 1/4}. Throws
/// std::out_of_range for a outside [1, 3/2] or b outside [0, 1].
FactorSpec factor_f(const Rational& alpha, const Rational& beta);

struct BetaOptimum {
  Rational beta;
  Rational value;
};

/// Exact minimiser of factor_f over beta in [0, 1].
BetaOptimum optimize_beta(const Rational& alpha);

struct TopBox {
  Rect box;
  /// Lexicographically smallest point of each group inside `box`.
  std::vector<Point> witnesses;
};

/// Minimum-semiperimeter rectangle meeting every group; ties by area, then
/// lexicographic (xmin, ymin, xmax, ymax). O(n^3).
TopBox top_level_bbox(const Instance& instance);

TwoLevelTree solve_small_top(const Instance& instance, const SteinerSubroutine& sub);

struct SmallTopCertificate {
  Rect box;
  /// U(k), or 0 for k = 1.
  Rational u;
  Coord top_length;
  /// alpha * U(k) * l(B_top).
  Coord top_bound;
  bool holds = false;
};

SmallTopCertificate small_top_certificate(const Instance& instance, const TwoLevelTree& t,
                                          const SteinerSubroutine& sub);

}  // namespace tlsteiner
