#include "tlsteiner/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace tlsteiner {

MinCut max_flow_min_cut(const FlowGraph& graph, std::size_t s, std::size_t t) {
  const std::size_t n = graph.vertex_count;
  if (s >= n || t >= n) throw std::invalid_argument("max_flow_min_cut: source or sink missing");
  if (s == t) throw std::invalid_argument("max_flow_min_cut: source equals sink");

  // Arc 2i is u->v, arc 2i+1 is v->u; each undirected edge gives both
  // directions the full capacity.
  std::vector<std::size_t> head(graph.edges.size() * 2);
  std::vector<std::int64_t> residual(graph.edges.size() * 2);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto& e = graph.edges[i];
    if (e.u >= n || e.v >= n) throw std::invalid_argument("max_flow_min_cut: edge endpoint out of range");
    head[2 * i] = e.v;
    head[2 * i + 1] = e.u;
    residual[2 * i] = e.capacity;
    residual[2 * i + 1] = e.capacity;
    out[e.u].push_back(2 * i);
    out[e.v].push_back(2 * i + 1);
  }

  MinCut cut;
  std::vector<std::size_t> via(n);
  std::vector<bool> seen(n);
  while (true) {
    std::fill(seen.begin(), seen.end(), false);
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty() && !seen[t]) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t a : out[x]) {
        std::size_t y = head[a];
        if (residual[a] > 0 && !seen[y]) {
          seen[y] = true;
          via[y] = a;
          queue.push_back(y);
        }
      }
    }
    if (!seen[t]) break;
    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (std::size_t y = t; y != s; y = head[via[y] ^ 1]) push = std::min(push, residual[via[y]]);
    for (std::size_t y = t; y != s; y = head[via[y] ^ 1]) {
      residual[via[y]] -= push;
      residual[via[y] ^ 1] += push;
    }
    cut.value += push;
  }
  cut.source_side = seen;
  return cut;
}

}  // namespace tlsteiner
