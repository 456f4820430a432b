#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tlsteiner/geometry.hpp"

namespace tlsteiner {

/// Terminal set partitioned into k groups P_1..P_k.
class Instance {
 public:
  Instance() = default;
  /// Deduplicates points within each group (first occurrence wins) and
  /// rejects empty instances or empty groups with std::invalid_argument.
  explicit Instance(std::vector<std::vector<Point>> groups);

  std::size_t k() const { return groups_.size(); }
  const std::vector<Point>& group(std::size_t i) const { return groups_.at(i); }
  const std::vector<std::vector<Point>>& groups() const { return groups_; }
  std::size_t terminal_count() const;
  std::vector<Point> all_points() const;
  /// Number of duplicates removed at construction.
  std::size_t removed_duplicates() const { return removed_duplicates_; }

  friend bool operator==(const Instance& a, const Instance& b) { return a.groups_ == b.groups_; }

 private:
  std::vector<std::vector<Point>> groups_;
  std::size_t removed_duplicates_ = 0;
};

/// T = (T_top, T_1..T_k) with connection points q_i on both T_top and T_i.
struct TwoLevelTree {
  EmbeddedTree top;
  std::vector<EmbeddedTree> subtrees;
  std::vector<Point> connection_points;

  /// Recomputed from the embeddings on every call.
  Coord total_length() const;
  Coord subtree_length() const;
};

/// Feasibility checks for a two-level tree against an instance: every tree
/// is valid, T_i covers P_i and q_i, and T_top covers every q_i.
std::vector<std::string> validate_two_level(const TwoLevelTree& t, const Instance& instance);

}  // namespace tlsteiner
