#include "tlsteiner/lifting.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tlsteiner/maxflow.hpp"

namespace tlsteiner {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t differing_coordinates(const LiftedVertex& a, const LiftedVertex& b) {
  std::size_t n = (a.base.x != b.base.x) + (a.base.y != b.base.y);
  for (std::size_t j = 0; j < a.lift.size(); ++j) n += a.lift[j] != b.lift[j];
  return n;
}

Coord vertex_distance(const LiftedVertex& a, const LiftedVertex& b) {
  Coord d = l1_dist(a.base, b.base);
  for (std::size_t j = 0; j < a.lift.size(); ++j) d += abs(a.lift[j] - b.lift[j]);
  return d;
}

}  // namespace

std::vector<LiftedPoint> lift_instance(const Instance& instance, const Coord& K) {
  if (instance.k() < 2) throw std::invalid_argument("lifting needs at least two groups");
  std::vector<Point> all = instance.all_points();
  if (K < bounding_box(all).semiperimeter())
    throw std::invalid_argument("K must be at least the semiperimeter of the bounding box");
  std::vector<LiftedPoint> out;
  for (std::size_t i = 0; i < instance.k(); ++i)
    for (const Point& p : instance.group(i)) out.push_back({p, i + 1});
  return out;
}

Coord lifted_dist(const LiftedPoint& a, const LiftedPoint& b, const Coord& K) {
  Coord d = l1_dist(a.base, b.base);
  if (a.layer != b.layer) d += (a.layer == 0 || b.layer == 0) ? K : K * 2;
  return d;
}

std::size_t LiftedTree::add_vertex(LiftedVertex v) {
  if (v.lift.size() != k_) throw std::invalid_argument("lifted vertex has wrong dimension");
  vertices_.push_back(std::move(v));
  return vertices_.size() - 1;
}

std::size_t LiftedTree::add_vertex(const Point& base, std::size_t layer, const Coord& K) {
  if (layer > k_) throw std::invalid_argument("layer out of range");
  LiftedVertex v{base, std::vector<Coord>(k_)};
  if (layer > 0) v.lift[layer - 1] = K;
  return add_vertex(std::move(v));
}

void LiftedTree::mark_terminal(std::size_t vertex, std::size_t layer) {
  if (vertex >= vertices_.size()) throw std::out_of_range("terminal vertex out of range");
  std::pair<std::size_t, std::size_t> entry{vertex, layer};
  if (std::find(terminals_.begin(), terminals_.end(), entry) == terminals_.end()) terminals_.push_back(entry);
}

void LiftedTree::add_edge(std::size_t u, std::size_t v) {
  if (u >= vertices_.size() || v >= vertices_.size()) throw std::out_of_range("edge endpoint out of range");
  if (differing_coordinates(vertices_[u], vertices_[v]) > 1)
    throw std::invalid_argument("lifted edge is not one-directional");
  edges_.emplace_back(u, v);
}

void LiftedTree::add_plane_path(std::size_t u, std::size_t v) {
  const LiftedVertex& a = vertices_.at(u);
  const LiftedVertex& b = vertices_.at(v);
  if (a.lift != b.lift) throw std::invalid_argument("plane path between different hyperplanes");
  if (a.base.x == b.base.x || a.base.y == b.base.y) {
    add_edge(u, v);
    return;
  }
  std::size_t c = add_vertex(LiftedVertex{{b.base.x, a.base.y}, a.lift});
  add_edge(u, c);
  add_edge(c, v);
}

Coord LiftedTree::edge_length(std::size_t e) const {
  return vertex_distance(vertices_[edges_[e].first], vertices_[edges_[e].second]);
}

Coord LiftedTree::length() const {
  Coord total;
  for (std::size_t e = 0; e < edges_.size(); ++e) total += edge_length(e);
  return total;
}

LiftedTree::Direction LiftedTree::direction(std::size_t e) const {
  const LiftedVertex& a = vertices_[edges_[e].first];
  const LiftedVertex& b = vertices_[edges_[e].second];
  if (a.base.x != b.base.x) return {Direction::kBaseX, 0};
  if (a.base.y != b.base.y) return {Direction::kBaseY, 0};
  for (std::size_t j = 0; j < k_; ++j)
    if (a.lift[j] != b.lift[j]) return {Direction::kLifted, j};
  return {Direction::kBaseX, 0};
}

std::optional<std::size_t> LiftedTree::layer_of(std::size_t v, const Coord& K) const {
  std::optional<std::size_t> layer = 0;
  for (std::size_t j = 0; j < k_; ++j) {
    const Coord& c = vertices_[v].lift[j];
    if (c.sign() == 0) continue;
    if (c != K || *layer != 0) return std::nullopt;
    layer = j + 1;
  }
  return layer;
}

bool LiftedTree::is_flat(const Coord& K) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (!layer_of(v, K)) return false;
  return true;
}

bool LiftedTree::is_connected() const {
  if (vertices_.empty()) return false;
  DisjointSets dsu(vertices_.size());
  std::size_t components = vertices_.size();
  for (const auto& [u, v] : edges_) components -= dsu.unite(u, v);
  return components == 1;
}

std::vector<LiftedPoint> LiftedTree::terminal_points() const {
  std::vector<LiftedPoint> out;
  for (const auto& [v, layer] : terminals_) out.push_back({vertices_[v].base, layer});
  return out;
}

std::size_t LiftedTree::lifted_edge_count(std::size_t j) const {
  std::size_t n = 0;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    Direction d = direction(e);
    n += d.kind == Direction::kLifted && d.dim == j && edge_length(e).sign() != 0;
  }
  return n;
}

void LiftedTree::compact() {
  const std::size_t n = vertices_.size();
  // Coincident vertices collapse onto the first occurrence.
  std::map<LiftedVertex, std::size_t> first;
  std::vector<std::size_t> rep(n);
  for (std::size_t v = 0; v < n; ++v) rep[v] = first.try_emplace(vertices_[v], v).first->second;

  std::vector<std::size_t> order;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (rep[edges_[e].first] != rep[edges_[e].second]) order.push_back(e);
  std::vector<Coord> len(edges_.size());
  for (std::size_t e : order) len[e] = edge_length(e);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return len[a] < len[b]; });

  DisjointSets dsu(n);
  std::vector<std::pair<std::size_t, std::size_t>> kept;
  std::vector<std::size_t> kept_index;
  for (std::size_t e : order) {
    std::size_t a = rep[edges_[e].first], b = rep[edges_[e].second];
    if (dsu.unite(a, b)) {
      kept.emplace_back(a, b);
      kept_index.push_back(e);
    }
  }
  // Restore input order so later passes see a stable edge numbering.
  std::vector<std::size_t> perm(kept.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return kept_index[a] < kept_index[b]; });

  std::vector<bool> is_terminal(n, false);
  for (const auto& [v, layer] : terminals_) is_terminal[rep[v]] = true;

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : kept) {
    ++degree[a];
    ++degree[b];
  }
  std::vector<bool> alive(n, false);
  for (std::size_t v = 0; v < n; ++v) alive[v] = rep[v] == v;
  std::vector<bool> edge_alive(kept.size(), true);
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    incident[kept[i].first].push_back(i);
    incident[kept[i].second].push_back(i);
  }
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v] && !is_terminal[v] && degree[v] <= 1) stack.push_back(v);
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    if (!alive[v] || is_terminal[v] || degree[v] > 1) continue;
    alive[v] = false;
    for (std::size_t i : incident[v]) {
      if (!edge_alive[i]) continue;
      edge_alive[i] = false;
      std::size_t w = kept[i].first == v ? kept[i].second : kept[i].first;
      if (--degree[w] <= 1 && !is_terminal[w]) stack.push_back(w);
    }
  }
  // Keep a lone vertex if nothing else survives (degenerate single point).
  if (std::none_of(alive.begin(), alive.end(), [](bool b) { return b; }) && n > 0) alive[rep[0]] = true;

  std::vector<std::size_t> index(n, static_cast<std::size_t>(-1));
  std::vector<LiftedVertex> vertices;
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    index[v] = vertices.size();
    vertices.push_back(vertices_[v]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i : perm)
    if (edge_alive[i]) edges.emplace_back(index[kept[i].first], index[kept[i].second]);
  std::vector<std::pair<std::size_t, std::size_t>> terminals;
  for (const auto& [v, layer] : terminals_) {
    std::pair<std::size_t, std::size_t> entry{index[rep[v]], layer};
    if (std::find(terminals.begin(), terminals.end(), entry) == terminals.end()) terminals.push_back(entry);
  }
  vertices_ = std::move(vertices);
  edges_ = std::move(edges);
  terminals_ = std::move(terminals);
}

LiftedTree lift_tree(const TwoLevelTree& t, const Instance& instance, const Coord& K) {
  const std::size_t k = instance.k();
  if (k < 2) throw std::invalid_argument("lifting needs at least two groups");
  if (t.subtrees.size() != k || t.connection_points.size() != k)
    throw std::invalid_argument("two-level tree does not match the instance");

  LiftedTree out(k);
  auto place = [&](EmbeddedTree tree, std::size_t layer, std::span<const Point> marks) {
    std::vector<std::size_t> at_point;
    for (const Point& p : marks)
      if (tree.ensure_vertex(p) == EmbeddedTree::npos) throw std::invalid_argument("point not on tree");
    std::vector<std::size_t> index(tree.vertices.size());
    for (std::size_t v = 0; v < tree.vertices.size(); ++v) index[v] = out.add_vertex(tree.vertices[v], layer, K);
    for (const TreeEdge& e : tree.edges) {
      const Point& a = tree.vertices[e.u];
      const Point& b = tree.vertices[e.v];
      Point c = tree.corner(e);
      if (c != a && c != b) {
        std::size_t w = out.add_vertex(c, layer, K);
        out.add_edge(index[e.u], w);
        out.add_edge(w, index[e.v]);
      } else {
        out.add_edge(index[e.u], index[e.v]);
      }
    }
    std::vector<std::size_t> marked;
    for (const Point& p : marks) {
      auto it = std::find(tree.vertices.begin(), tree.vertices.end(), p);
      marked.push_back(index[static_cast<std::size_t>(it - tree.vertices.begin())]);
    }
    return marked;
  };

  std::vector<std::size_t> top_q = place(t.top, 0, t.connection_points);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Point> marks = instance.group(i);
    marks.push_back(t.connection_points[i]);
    std::vector<std::size_t> idx = place(t.subtrees[i], i + 1, marks);
    for (std::size_t m = 0; m + 1 < idx.size(); ++m) out.mark_terminal(idx[m], i + 1);
    out.add_edge(top_q[i], idx.back());
  }
  return out;
}

LiftedTree flatten(const LiftedTree& t, const Coord& K) {
  if (!t.is_connected()) throw std::invalid_argument("flatten: disconnected input");
  const std::size_t k = t.k();
  for (const LiftedVertex& v : t.vertices())
    for (const Coord& c : v.lift)
      if (c.sign() < 0 || c > K) throw std::invalid_argument("flatten: vertex outside the lifted bounding box");

  LiftedTree cur = t;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t n = cur.vertices_.size();
    std::vector<bool> straight(cur.edges_.size(), false);
    DisjointSets forest(n);
    for (std::size_t e = 0; e < cur.edges_.size(); ++e) {
      LiftedTree::Direction d = cur.direction(e);
      straight[e] = d.kind == LiftedTree::Direction::kLifted && d.dim == j;
      if (!straight[e]) forest.unite(cur.edges_[e].first, cur.edges_[e].second);
    }
    std::vector<std::size_t> comp(n);
    std::map<std::size_t, std::size_t> comp_id;
    for (std::size_t v = 0; v < n; ++v) {
      auto [it, inserted] = comp_id.try_emplace(forest.find(v), comp_id.size());
      comp[v] = it->second;
    }
    const std::size_t components = comp_id.size();
    const std::size_t s = components, sink = components + 1;
    FlowGraph g;
    g.vertex_count = components + 2;
    std::int64_t pinned = static_cast<std::int64_t>(cur.edges_.size()) + 1;
    // Trees lying in a hyperplane stay there: the s/t edges get a capacity
    // no cut of straight edges can match.
    std::vector<int> side(components, -1);
    for (std::size_t v = 0; v < n; ++v) {
      const Coord& c = cur.vertices_[v].lift[j];
      if (c.sign() == 0) side[comp[v]] = 0;
      if (c == K) side[comp[v]] = 1;
    }
    for (std::size_t c = 0; c < components; ++c) {
      if (side[c] == 0) g.add_edge(s, c, pinned);
      if (side[c] == 1) g.add_edge(c, sink, pinned);
    }
    for (std::size_t e = 0; e < cur.edges_.size(); ++e)
      if (straight[e]) g.add_edge(comp[cur.edges_[e].first], comp[cur.edges_[e].second]);
    MinCut cut = max_flow_min_cut(g, s, sink);
    for (std::size_t v = 0; v < n; ++v) cur.vertices_[v].lift[j] = cut.source_side[comp[v]] ? Coord(0) : K;
    cur.compact();
  }

  for (LiftedVertex& v : cur.vertices_) {
    std::size_t at_k = 0;
    for (const Coord& c : v.lift) at_k += c == K;
    if (at_k >= 2) std::fill(v.lift.begin(), v.lift.end(), Coord(0));
  }
  cur.compact();
  return cur;
}

LiftedTree normalize_single_edges(const LiftedTree& t, const Coord& K) {
  if (!t.is_flat(K)) throw std::invalid_argument("normalize_single_edges: tree is not flat");
  LiftedTree cur = t;
  cur.compact();
  for (std::size_t j = 0; j < cur.k(); ++j) {
    while (true) {
      std::vector<std::size_t> along;
      for (std::size_t e = 0; e < cur.edges_.size(); ++e) {
        LiftedTree::Direction d = cur.direction(e);
        if (d.kind == LiftedTree::Direction::kLifted && d.dim == j) along.push_back(e);
      }
      if (along.size() <= 1) break;
      auto ends = [&](std::size_t e) {
        auto [a, b] = cur.edges_[e];
        return cur.vertices_[a].lift[j].sign() == 0 ? std::pair{a, b} : std::pair{b, a};
      };
      auto [bottom, top] = ends(along[0]);
      auto [bottom2, top2] = ends(along[1]);
      cur.edges_.erase(cur.edges_.begin() + static_cast<std::ptrdiff_t>(along[1]));

      DisjointSets dsu(cur.vertices_.size());
      for (const auto& [a, b] : cur.edges_) dsu.unite(a, b);
      if (dsu.find(bottom) == dsu.find(bottom2)) {
        cur.add_plane_path(top, top2);
      } else {
        cur.add_plane_path(bottom, bottom2);
      }
      cur.compact();
    }
  }
  return cur;
}

TwoLevelTree project_to_two_level(const LiftedTree& t, const Coord& K) {
  const std::size_t k = t.k();
  std::vector<std::string> problems;
  if (!t.is_flat(K)) problems.push_back("tree is not flat");
  if (!t.is_connected()) problems.push_back("tree is not connected");
  std::vector<std::size_t> link(k, static_cast<std::size_t>(-1));
  std::vector<std::size_t> link_count(k, 0);
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    LiftedTree::Direction d = t.direction(e);
    if (d.kind == LiftedTree::Direction::kLifted) {
      link[d.dim] = e;
      ++link_count[d.dim];
    }
  }
  for (std::size_t j = 0; j < k; ++j)
    if (link_count[j] != 1)
      problems.push_back("direction " + std::to_string(j + 1) + " has " + std::to_string(link_count[j]) +
                         " lifted edges");
  auto fail = [&] {
    std::ostringstream msg;
    msg << "project_to_two_level:";
    for (const auto& p : problems) msg << ' ' << p << ';';
    throw std::runtime_error(msg.str());
  };
  if (!problems.empty()) fail();

  const std::size_t n = t.vertices().size();
  std::vector<bool> is_link(t.edges().size(), false);
  for (std::size_t e : link) is_link[e] = true;
  DisjointSets dsu(n);
  for (std::size_t e = 0; e < t.edges().size(); ++e)
    if (!is_link[e]) dsu.unite(t.edges()[e].first, t.edges()[e].second);

  std::vector<std::size_t> layer(n);
  for (std::size_t v = 0; v < n; ++v) layer[v] = *t.layer_of(v, K);
  // Component root -> level (0 = top, i = group i).
  std::map<std::size_t, std::size_t> level_of_root;
  std::vector<Point> q(k);
  for (std::size_t j = 0; j < k; ++j) {
    auto [a, b] = t.edges()[link[j]];
    std::size_t bottom = layer[a] == 0 ? a : b;
    std::size_t top = bottom == a ? b : a;
    q[j] = t.vertices()[bottom].base;
    auto [it0, fresh0] = level_of_root.try_emplace(dsu.find(bottom), 0);
    if (it0->second != 0) problems.push_back("top level split across lifted edges");
    auto [it, fresh] = level_of_root.try_emplace(dsu.find(top), j + 1);
    if (!fresh && it->second != j + 1) problems.push_back("group " + std::to_string(j + 1) + " component shared");
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto it = level_of_root.find(dsu.find(v));
    if (it == level_of_root.end() || it->second != layer[v])
      problems.push_back("vertex " + std::to_string(v) + " lies in the wrong component");
  }
  if (!problems.empty()) fail();

  TwoLevelTree out;
  out.subtrees.resize(k);
  out.connection_points = q;
  std::vector<std::size_t> local(n);
  auto tree_of = [&](std::size_t level) -> EmbeddedTree& {
    return level == 0 ? out.top : out.subtrees[level - 1];
  };
  for (std::size_t v = 0; v < n; ++v) local[v] = tree_of(layer[v]).add_vertex(t.vertices()[v].base);
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    if (is_link[e]) continue;
    auto [a, b] = t.edges()[e];
    tree_of(layer[a]).add_edge(local[a], local[b], Embedding::kStraight);
  }
  auto mark = [](EmbeddedTree& tree, std::size_t v) {
    if (std::find(tree.terminals.begin(), tree.terminals.end(), v) == tree.terminals.end())
      tree.terminals.push_back(v);
  };
  for (const auto& [v, group] : t.terminals()) mark(tree_of(group), local[v]);
  for (std::size_t j = 0; j < k; ++j) {
    auto [a, b] = t.edges()[link[j]];
    mark(out.top, local[layer[a] == 0 ? a : b]);
    mark(out.subtrees[j], local[layer[a] == 0 ? b : a]);
  }
  return out;
}

}  // namespace tlsteiner
