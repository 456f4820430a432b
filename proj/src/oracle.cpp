#include "tlsteiner/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "tlsteiner/lifting.hpp"
#include "tlsteiner/rsmt.hpp"

namespace tlsteiner {

std::size_t GridGraph::add_vertex(const Point& p, std::size_t layer) {
  points.push_back(p);
  layers.push_back(layer);
  adjacency.emplace_back();
  return points.size() - 1;
}

void GridGraph::add_edge(std::size_t u, std::size_t v, const Coord& w) {
  adjacency.at(u).push_back({v, w});
  adjacency.at(v).push_back({u, w});
}

namespace {

void add_grid_copy(GridGraph& g, const HananGrid& grid, std::size_t layer) {
  const std::size_t base = g.size();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) g.add_vertex(grid.vertex(idx), layer);
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix) {
      std::size_t v = base + grid.index(ix, iy);
      if (ix + 1 < grid.xs.size()) g.add_edge(v, base + grid.index(ix + 1, iy), grid.xs[ix + 1] - grid.xs[ix]);
      if (iy + 1 < grid.ys.size()) g.add_edge(v, base + grid.index(ix, iy + 1), grid.ys[iy + 1] - grid.ys[iy]);
    }
  }
}

struct Cell {
  Coord cost;
  bool finite = false;
  // Backpointer: split submask (merge step) or predecessor vertex (edge step).
  std::size_t split = 0;
  std::size_t pred = static_cast<std::size_t>(-1);
};

}  // namespace

GridGraph hanan_grid_graph(const HananGrid& grid) {
  GridGraph g;
  add_grid_copy(g, grid, 0);
  return g;
}

GridGraph layered_grid_graph(const HananGrid& grid, std::size_t k, const Coord& K) {
  GridGraph g;
  for (std::size_t layer = 0; layer <= k; ++layer) add_grid_copy(g, grid, layer);
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t idx = 0; idx < grid.size(); ++idx) g.add_edge(idx, i * grid.size() + idx, K);
  return g;
}

GraphSteinerTree dreyfus_wagner(const GridGraph& graph, std::span<const std::size_t> terminals) {
  if (terminals.empty()) throw std::invalid_argument("dreyfus_wagner: no terminals");
  {
    std::set<std::size_t> distinct(terminals.begin(), terminals.end());
    if (distinct.size() != terminals.size()) throw std::invalid_argument("dreyfus_wagner: repeated terminal");
  }
  const std::size_t n = graph.size();
  const std::size_t root = terminals.back();
  const std::size_t r = terminals.size() - 1;
  if (r > 20) throw std::length_error("dreyfus_wagner: too many terminals");
  const std::size_t full = (std::size_t{1} << r) - 1;

  std::vector<std::vector<Cell>> dp(full + 1, std::vector<Cell>(n));
  for (std::size_t i = 0; i < r; ++i) dp[std::size_t{1} << i][terminals[i]].finite = true;

  using Entry = std::pair<Coord, std::size_t>;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    std::vector<Cell>& cur = dp[mask];
    // Merge two subtrees meeting at v; each split is visited once via the
    // lowest bit staying in `sub`.
    const std::size_t low = mask & (~mask + 1);
    for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;
      const std::vector<Cell>& a = dp[sub];
      const std::vector<Cell>& b = dp[mask ^ sub];
      for (std::size_t v = 0; v < n; ++v) {
        if (!a[v].finite || !b[v].finite) continue;
        Coord c = a[v].cost + b[v].cost;
        if (!cur[v].finite || c < cur[v].cost) {
          cur[v].cost = std::move(c);
          cur[v].finite = true;
          cur[v].split = sub;
          cur[v].pred = static_cast<std::size_t>(-1);
        }
      }
    }
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (std::size_t v = 0; v < n; ++v)
      if (cur[v].finite) queue.emplace(cur[v].cost, v);
    std::vector<bool> done(n, false);
    while (!queue.empty()) {
      auto [d, v] = queue.top();
      queue.pop();
      if (done[v] || d != cur[v].cost) continue;
      done[v] = true;
      for (const GridGraph::Arc& arc : graph.adjacency[v]) {
        Coord c = d + arc.weight;
        Cell& w = cur[arc.to];
        if (!w.finite || c < w.cost) {
          w.cost = c;
          w.finite = true;
          w.split = 0;
          w.pred = v;
          queue.emplace(std::move(c), arc.to);
        }
      }
    }
  }

  GraphSteinerTree out;
  if (r == 0) {
    out.vertices.push_back(root);
    return out;
  }
  if (!dp[full][root].finite) throw std::runtime_error("dreyfus_wagner: terminals are not connected");

  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{full, root}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    const Cell& c = dp[mask][v];
    if (c.pred != static_cast<std::size_t>(-1)) {
      edges.emplace(std::min(v, c.pred), std::max(v, c.pred));
      stack.emplace_back(mask, c.pred);
    } else if (c.split != 0) {
      stack.emplace_back(c.split, v);
      stack.emplace_back(mask ^ c.split, v);
    }
  }

  // Overlapping subtrees may share edges or close cycles; a spanning forest
  // of the union is still optimal once Steiner leaves are removed.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<std::pair<std::size_t, std::size_t>> kept;
  for (const auto& [u, v] : edges) {
    std::size_t a = find(u), b = find(v);
    if (a == b) continue;
    parent[a] = b;
    kept.emplace_back(u, v);
  }
  std::vector<bool> is_terminal(n, false);
  for (std::size_t t : terminals) is_terminal[t] = true;
  bool pruned = true;
  while (pruned) {
    pruned = false;
    std::vector<std::size_t> degree(n, 0);
    for (const auto& [u, v] : kept) {
      ++degree[u];
      ++degree[v];
    }
    std::erase_if(kept, [&](const auto& e) {
      bool leaf = (degree[e.first] == 1 && !is_terminal[e.first]) || (degree[e.second] == 1 && !is_terminal[e.second]);
      pruned |= leaf;
      return leaf;
    });
  }

  std::set<std::size_t> used(terminals.begin(), terminals.end());
  for (const auto& [u, v] : kept) {
    used.insert(u);
    used.insert(v);
    for (const GridGraph::Arc& arc : graph.adjacency[u])
      if (arc.to == v) {
        out.length += arc.weight;
        break;
      }
  }
  out.vertices.assign(used.begin(), used.end());
  out.edges = std::move(kept);
  return out;
}

EmbeddedTree exact_rsmt(std::span<const Point> points, std::size_t limit) {
  std::vector<Point> pts = unique_points(points);
  if (pts.empty()) throw std::invalid_argument("empty point set");
  if (pts.size() > limit)
    throw std::length_error("exact solver size limit is " + std::to_string(limit) + " terminals, got " +
                            std::to_string(pts.size()));
  HananGrid grid = hanan_grid(pts);
  GridGraph graph = hanan_grid_graph(grid);
  std::vector<std::size_t> term;
  for (const Point& p : pts) term.push_back(grid.index_of(p));
  GraphSteinerTree st = dreyfus_wagner(graph, term);

  EmbeddedTree out;
  std::vector<std::size_t> local(graph.size(), EmbeddedTree::npos);
  for (const Point& p : points) {
    std::size_t g = grid.index_of(p);
    if (local[g] == EmbeddedTree::npos) local[g] = out.add_vertex(p, true);
  }
  for (std::size_t g : st.vertices)
    if (local[g] == EmbeddedTree::npos) local[g] = out.add_vertex(graph.points[g]);
  for (const auto& [u, v] : st.edges) out.add_edge(local[u], local[v], Embedding::kStraight);
  return out;
}

ExactTwoLevel exact_two_level(const Instance& instance, std::size_t limit, std::size_t max_groups) {
  const std::size_t k = instance.k();
  const std::size_t n = instance.terminal_count();
  if (n > limit)
    throw std::length_error("exact solver size limit is " + std::to_string(limit) + " terminals, got " +
                            std::to_string(n));
  if (k > max_groups)
    throw std::length_error("exact solver handles at most " + std::to_string(max_groups) + " groups, got " +
                            std::to_string(k));
  if (k == 1) {
    ExactTwoLevel out;
    const std::vector<Point>& group = instance.group(0);
    Point q = *std::min_element(group.begin(), group.end());
    out.tree.top = EmbeddedTree::single(q);
    out.tree.subtrees.push_back(exact_rsmt(group, limit));
    out.tree.connection_points.push_back(q);
    out.length = out.tree.total_length();
    return out;
  }

  std::vector<Point> all = instance.all_points();
  HananGrid grid = hanan_grid(all);
  const Coord K = bounding_box(all).semiperimeter() + Coord(1);
  GridGraph graph = layered_grid_graph(grid, k, K);
  std::vector<std::size_t> term;
  std::vector<std::size_t> term_layer;
  for (std::size_t i = 0; i < k; ++i)
    for (const Point& p : instance.group(i)) {
      term.push_back((i + 1) * grid.size() + grid.index_of(p));
      term_layer.push_back(i + 1);
    }
  GraphSteinerTree st = dreyfus_wagner(graph, term);

  LiftedTree lifted(k);
  std::vector<std::size_t> local(graph.size(), static_cast<std::size_t>(-1));
  for (std::size_t g : st.vertices) local[g] = lifted.add_vertex(graph.points[g], graph.layers[g], K);
  for (const auto& [u, v] : st.edges) lifted.add_edge(local[u], local[v]);
  for (std::size_t t = 0; t < term.size(); ++t) lifted.mark_terminal(local[term[t]], term_layer[t]);

  ExactTwoLevel out;
  out.tree = project_to_two_level(normalize_single_edges(lifted, K), K);
  out.length = out.tree.total_length();
  return out;
}

Rational u_bound(std::size_t k) {
  if (k < 2) throw std::invalid_argument("u_bound needs k >= 2");
  std::int64_t s = 0;
  while (static_cast<std::size_t>(s * s) < k - 2) ++s;
  return Rational(s, 2) + Rational(3, 4);
}

}  // namespace tlsteiner
