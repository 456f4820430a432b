#include "tlsteiner/model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tlsteiner {

Instance::Instance(std::vector<std::vector<Point>> groups) {
  if (groups.empty()) throw std::invalid_argument("no groups");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) throw std::invalid_argument("group " + std::to_string(i) + " is empty");
    std::vector<Point> kept;
    for (Point& p : groups[i]) {
      if (std::find(kept.begin(), kept.end(), p) != kept.end()) {
        ++removed_duplicates_;
        continue;
      }
      kept.push_back(std::move(p));
    }
    groups_.push_back(std::move(kept));
  }
}

std::size_t Instance::terminal_count() const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.size();
  return n;
}

std::vector<Point> Instance::all_points() const {
  std::vector<Point> out;
  for (const auto& g : groups_) out.insert(out.end(), g.begin(), g.end());
  return out;
}

Coord TwoLevelTree::subtree_length() const {
  Coord total;
  for (const EmbeddedTree& t : subtrees) total += tree_length(t);
  return total;
}

Coord TwoLevelTree::total_length() const { return tree_length(top) + subtree_length(); }

std::vector<std::string> validate_two_level(const TwoLevelTree& t, const Instance& instance) {
  std::vector<std::string> out;
  const std::size_t k = instance.k();
  if (t.subtrees.size() != k || t.connection_points.size() != k) {
    out.push_back("expected " + std::to_string(k) + " subtrees and connection points");
    return out;
  }
  for (const Violation& v : validate_tree(t.top, t.connection_points)) out.push_back("top: " + v.message);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Point> required = instance.group(i);
    required.push_back(t.connection_points[i]);
    for (const Violation& v : validate_tree(t.subtrees[i], required))
      out.push_back("subtree " + std::to_string(i) + ": " + v.message);
  }
  return out;
}

}  // namespace tlsteiner
