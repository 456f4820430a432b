#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tlsteiner {

/// Undirected graph with integer edge capacities (unit by default).
struct FlowGraph {
  struct Edge {
    std::size_t u;
    std::size_t v;
    std::int64_t capacity = 1;
  };

  std::size_t vertex_count = 0;
  std::vector<Edge> edges;

  void add_edge(std::size_t u, std::size_t v, std::int64_t capacity = 1) { edges.push_back({u, v, capacity}); }
};

struct MinCut {
  std::int64_t value = 0;
  /// Vertices reachable from s in the final residual graph.
  std::vector<bool> source_side;
};

/// Shortest-augmenting-path max flow; returns the cut value and the
/// residual-reachable source side. Throws std::invalid_argument when s or t
/// is missing or s == t.
MinCut max_flow_min_cut(const FlowGraph& graph, std::size_t s, std::size_t t);

}  // namespace tlsteiner
