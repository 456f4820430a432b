#include "tlsteiner/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tlsteiner {

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

Coord l1_dist(const Point& p, const Point& q) { return abs(p.x - q.x) + abs(p.y - q.y); }

Point Rect::center() const { return {(xmin + xmax) / 2, (ymin + ymax) / 2}; }

bool Rect::contains(const Point& p) const {
  return xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax;
}

Point Rect::clamp(const Point& p) const {
  return {std::clamp(p.x, xmin, xmax), std::clamp(p.y, ymin, ymax)};
}

Rect bounding_box(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  Rect r{points[0].x, points[0].x, points[0].y, points[0].y};
  for (const Point& p : points.subspan(1)) {
    if (p.x < r.xmin) r.xmin = p.x;
    if (p.x > r.xmax) r.xmax = p.x;
    if (p.y < r.ymin) r.ymin = p.y;
    if (p.y > r.ymax) r.ymax = p.y;
  }
  return r;
}

bool HananGrid::contains(const Point& p) const {
  return std::binary_search(xs.begin(), xs.end(), p.x) &&
         std::binary_search(ys.begin(), ys.end(), p.y);
}

std::size_t HananGrid::index_of(const Point& p) const {
  auto ix = std::lower_bound(xs.begin(), xs.end(), p.x);
  auto iy = std::lower_bound(ys.begin(), ys.end(), p.y);
  if (ix == xs.end() || *ix != p.x || iy == ys.end() || *iy != p.y)
    throw std::invalid_argument("point is not a Hanan grid vertex");
  return index(static_cast<std::size_t>(ix - xs.begin()), static_cast<std::size_t>(iy - ys.begin()));
}

HananGrid hanan_grid(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  HananGrid g;
  for (const Point& p : points) {
    g.xs.push_back(p.x);
    g.ys.push_back(p.y);
  }
  std::sort(g.xs.begin(), g.xs.end());
  g.xs.erase(std::unique(g.xs.begin(), g.xs.end()), g.xs.end());
  std::sort(g.ys.begin(), g.ys.end());
  g.ys.erase(std::unique(g.ys.begin(), g.ys.end()), g.ys.end());
  return g;
}

bool Segment::contains(const Point& p) const {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

Point Segment::closest(const Point& p) const {
  return {std::clamp(p.x, std::min(a.x, b.x), std::max(a.x, b.x)),
          std::clamp(p.y, std::min(a.y, b.y), std::max(a.y, b.y))};
}

EmbeddedTree EmbeddedTree::single(const Point& p) {
  EmbeddedTree t;
  t.add_vertex(p, true);
  return t;
}

std::size_t EmbeddedTree::add_vertex(const Point& p, bool terminal) {
  vertices.push_back(p);
  if (terminal) terminals.push_back(vertices.size() - 1);
  return vertices.size() - 1;
}

void EmbeddedTree::add_edge(std::size_t u, std::size_t v, Embedding e) {
  const Point& a = vertices.at(u);
  const Point& b = vertices.at(v);
  if (a.x == b.x || a.y == b.y) e = Embedding::kStraight;
  edges.push_back({u, v, e});
}

Point EmbeddedTree::corner(const TreeEdge& e) const {
  const Point& a = vertices[e.u];
  const Point& b = vertices[e.v];
  switch (e.embedding) {
    case Embedding::kHorizontalFirst:
      return {b.x, a.y};
    case Embedding::kVerticalFirst:
      return {a.x, b.y};
    case Embedding::kStraight:
      break;
  }
  return b;
}

std::vector<Segment> EmbeddedTree::segments(const TreeEdge& e) const {
  std::vector<Segment> out;
  const Point& a = vertices[e.u];
  const Point& b = vertices[e.v];
  Point c = corner(e);
  if (a != c) out.push_back({a, c});
  if (c != b) out.push_back({c, b});
  return out;
}

std::vector<Segment> EmbeddedTree::all_segments() const {
  std::vector<Segment> out;
  for (const TreeEdge& e : edges)
    for (const Segment& s : segments(e)) out.push_back(s);
  return out;
}

std::vector<Point> EmbeddedTree::terminal_points() const {
  std::vector<Point> out;
  out.reserve(terminals.size());
  for (std::size_t i : terminals) out.push_back(vertices[i]);
  return out;
}

std::vector<std::vector<std::size_t>> EmbeddedTree::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const TreeEdge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

std::size_t EmbeddedTree::ensure_vertex(const Point& p) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == p) return i;
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    TreeEdge e = edges[ei];
    auto segs = segments(e);
    for (std::size_t si = 0; si < segs.size(); ++si) {
      if (!segs[si].contains(p)) continue;
      std::size_t w = add_vertex(p);
      // A point on the first leg keeps the bend on the w-v part; on the
      // second leg the bend stays on u-w.
      if (si == 0) {
        edges[ei] = {e.u, w, Embedding::kStraight};
        add_edge(w, e.v, e.embedding);
      } else {
        edges[ei] = {e.u, w, e.embedding};
        add_edge(w, e.v, Embedding::kStraight);
      }
      return w;
    }
  }
  return npos;
}

Coord tree_length(const EmbeddedTree& t) {
  Coord total;
  for (const TreeEdge& e : t.edges) total += l1_dist(t.vertices[e.u], t.vertices[e.v]);
  return total;
}

NearestPoint nearest_point_on_tree(const EmbeddedTree& t, const Point& q) {
  if (t.vertices.empty()) throw std::invalid_argument("nearest_point_on_tree: empty tree");
  NearestPoint best{t.vertices[0], l1_dist(t.vertices[0], q)};
  auto consider = [&](const Point& p) {
    Coord d = l1_dist(p, q);
    if (d < best.distance || (d == best.distance && p < best.point)) best = {p, d};
  };
  for (const Point& v : t.vertices) consider(v);
  for (const TreeEdge& e : t.edges)
    for (const Segment& s : t.segments(e)) consider(s.closest(q));
  return best;
}

bool tree_covers(const EmbeddedTree& t, const Point& p) {
  for (const Point& v : t.vertices)
    if (v == p) return true;
  for (const TreeEdge& e : t.edges)
    for (const Segment& s : t.segments(e))
      if (s.contains(p)) return true;
  return false;
}

std::vector<Violation> validate_tree(const EmbeddedTree& t, std::span<const Point> required_terminals) {
  std::vector<Violation> out;
  const std::size_t n = t.vertices.size();
  bool indices_ok = true;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const TreeEdge& e = t.edges[i];
    if (e.u >= n || e.v >= n) {
      std::ostringstream msg;
      msg << "edge " << i << " references a missing vertex";
      out.push_back({ViolationKind::kEdgeIndex, msg.str()});
      indices_ok = false;
      continue;
    }
    const Point& a = t.vertices[e.u];
    const Point& b = t.vertices[e.v];
    if (e.embedding == Embedding::kStraight && a.x != b.x && a.y != b.y) {
      std::ostringstream msg;
      msg << "edge " << i << " is marked straight but " << a << " and " << b << " are not aligned";
      out.push_back({ViolationKind::kBadEmbedding, msg.str()});
    }
  }
  if (n == 0) {
    out.push_back({ViolationKind::kNotConnected, "tree has no vertices"});
    return out;
  }
  if (t.edges.size() + 1 != n) {
    std::ostringstream msg;
    msg << "edge count " << t.edges.size() << " != vertex count - 1 (" << n - 1 << ")";
    out.push_back({ViolationKind::kEdgeCount, msg.str()});
  }
  if (indices_ok) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool cycle = false;
    std::size_t components = n;
    for (const TreeEdge& e : t.edges) {
      std::size_t a = find(e.u), b = find(e.v);
      if (a == b) {
        cycle = true;
      } else {
        parent[a] = b;
        --components;
      }
    }
    if (components > 1) out.push_back({ViolationKind::kNotConnected, "not connected"});
    if (cycle) out.push_back({ViolationKind::kCycle, "contains a cycle"});
  }
  for (const Point& p : required_terminals) {
    if (!tree_covers(t, p)) {
      std::ostringstream msg;
      msg << "terminal uncovered: " << p;
      out.push_back({ViolationKind::kTerminalUncovered, msg.str()});
    }
  }
  return out;
}

}  // namespace tlsteiner
