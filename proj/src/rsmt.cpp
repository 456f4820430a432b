#include "tlsteiner/rsmt.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "tlsteiner/oracle.hpp"

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

struct Leg {
  bool horizontal;
  int direction;  // +1 or -1 along the axis
  Coord length;
};

// First leg of the edge walked from vertex `from` when embedded as `emb`.
std::optional<Leg> first_leg(const EmbeddedTree& t, const TreeEdge& e, Embedding emb, std::size_t from) {
  TreeEdge oriented{e.u, e.v, emb};
  const Point& v = t.vertices[from];
  Point c = t.corner(oriented);
  if (c == v) c = t.vertices[from == e.u ? e.v : e.u];
  if (c == v) return std::nullopt;
  if (c.y == v.y) return Leg{true, c.x > v.x ? 1 : -1, abs(c.x - v.x)};
  return Leg{false, c.y > v.y ? 1 : -1, abs(c.y - v.y)};
}

std::vector<Embedding> orientations(const EmbeddedTree& t, const TreeEdge& e) {
  const Point& a = t.vertices[e.u];
  const Point& b = t.vertices[e.v];
  if (a.x == b.x || a.y == b.y) return {Embedding::kStraight};
  return {Embedding::kHorizontalFirst, Embedding::kVerticalFirst};
}

// Edge from s towards w whose first leg runs along the given axis.
TreeEdge continuing_edge(const EmbeddedTree& t, std::size_t s, std::size_t w, bool horizontal) {
  const Point& a = t.vertices[s];
  const Point& b = t.vertices[w];
  if (a.x == b.x || a.y == b.y) return {s, w, Embedding::kStraight};
  return {s, w, horizontal ? Embedding::kHorizontalFirst : Embedding::kVerticalFirst};
}

// Best overlap merge at vertex v; applies it and returns true if one exists.
bool merge_at(EmbeddedTree& t, std::size_t v, const std::vector<std::size_t>& incident) {
  struct Candidate {
    std::size_t e1, e2;
    Embedding o1, o2;
    Leg leg;
  };
  std::optional<Candidate> best;
  for (std::size_t i = 0; i < incident.size(); ++i) {
    for (std::size_t j = i + 1; j < incident.size(); ++j) {
      const TreeEdge& e1 = t.edges[incident[i]];
      const TreeEdge& e2 = t.edges[incident[j]];
      for (Embedding o1 : orientations(t, e1)) {
        auto l1 = first_leg(t, e1, o1, v);
        if (!l1) continue;
        for (Embedding o2 : orientations(t, e2)) {
          auto l2 = first_leg(t, e2, o2, v);
          if (!l2 || l1->horizontal != l2->horizontal || l1->direction != l2->direction) continue;
          Coord overlap = min(l1->length, l2->length);
          if (!best || overlap > best->leg.length)
            best = Candidate{incident[i], incident[j], o1, o2, {l1->horizontal, l1->direction, overlap}};
        }
      }
    }
  }
  if (!best) return false;

  const TreeEdge e1 = t.edges[best->e1];
  const TreeEdge e2 = t.edges[best->e2];
  std::size_t w1 = e1.u == v ? e1.v : e1.u;
  std::size_t w2 = e2.u == v ? e2.v : e2.u;
  Point s = t.vertices[v];
  Coord step = best->leg.direction > 0 ? best->leg.length : -best->leg.length;
  if (best->leg.horizontal) {
    s.x += step;
  } else {
    s.y += step;
  }
  std::size_t si;
  if (s == t.vertices[w1]) {
    si = w1;
  } else if (s == t.vertices[w2]) {
    si = w2;
  } else {
    si = t.add_vertex(s);
  }
  std::vector<TreeEdge> replacement{{v, si, Embedding::kStraight}};
  if (si != w1) replacement.push_back(continuing_edge(t, si, w1, best->leg.horizontal));
  if (si != w2) replacement.push_back(continuing_edge(t, si, w2, best->leg.horizontal));
  t.edges[best->e1] = replacement[0];
  t.edges[best->e2] = replacement[1];
  if (replacement.size() == 3) t.edges.push_back(replacement[2]);
  return true;
}

}  // namespace

std::vector<Point> unique_points(std::span<const Point> points) {
  std::vector<Point> out(points.begin(), points.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<WeightedEdge> octant_candidate_edges(std::span<const Point> points) {
  std::vector<Point> ps(points.begin(), points.end());
  const std::size_t n = ps.size();
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<WeightedEdge> edges;
  std::vector<Coord> key(n);
  for (int k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < n; ++i) key[i] = ps[i].x + ps[i].y;
    std::sort(id.begin(), id.end(), [&](std::size_t i, std::size_t j) {
      if (key[i] != key[j]) return key[i] < key[j];
      return i < j;
    });
    std::map<Coord, std::size_t> sweep;
    for (std::size_t i : id) {
      for (auto it = sweep.lower_bound(-ps[i].y); it != sweep.end(); it = sweep.erase(it)) {
        std::size_t j = it->second;
        Coord dx = ps[i].x - ps[j].x;
        Coord dy = ps[i].y - ps[j].y;
        if (dy > dx) break;
        edges.push_back({i, j, l1_dist(points[i], points[j])});
      }
      sweep[-ps[i].y] = i;
    }
    for (Point& p : ps) {
      if (k & 1) {
        p.x = -p.x;
      } else {
        std::swap(p.x, p.y);
      }
    }
  }
  return edges;
}

std::vector<WeightedEdge> kruskal(std::size_t n, std::vector<WeightedEdge> edges) {
  for (WeightedEdge& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  DisjointSets dsu(n);
  std::vector<WeightedEdge> out;
  for (const WeightedEdge& e : edges) {
    if (dsu.unite(e.u, e.v)) {
      out.push_back(e);
      if (out.size() + 1 == n) break;
    }
  }
  return out;
}

EmbeddedTree rectilinear_mst(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("rectilinear_mst: empty point set");
  const std::size_t n = points.size();
  std::vector<WeightedEdge> candidates;
  if (n <= kAllPairsLimit) {
    candidates.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) candidates.push_back({i, j, l1_dist(points[i], points[j])});
  } else {
    candidates = octant_candidate_edges(points);
  }
  EmbeddedTree t;
  t.vertices.assign(points.begin(), points.end());
  t.terminals.resize(n);
  std::iota(t.terminals.begin(), t.terminals.end(), 0);
  for (const WeightedEdge& e : kruskal(n, std::move(candidates))) t.add_edge(e.u, e.v);
  return t;
}

EmbeddedTree steinerize(const EmbeddedTree& t) {
  EmbeddedTree out = t;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
      while (true) {
        std::vector<std::size_t> incident;
        for (std::size_t i = 0; i < out.edges.size(); ++i)
          if (out.edges[i].u == v || out.edges[i].v == v) incident.push_back(i);
        if (incident.size() < 2 || !merge_at(out, v, incident)) break;
        changed = true;
      }
    }
  }
  return out;
}

EmbeddedTree approx_steiner(std::span<const Point> points, const SteinerSubroutine& sub) {
  if (points.empty()) throw std::invalid_argument("approx_steiner: empty point set");
  std::vector<Point> pts = unique_points(points);
  if (sub.mode == SubroutineMode::kExact) return exact_rsmt(pts, sub.exact_limit);
  EmbeddedTree t = rectilinear_mst(pts);
  return sub.steinerize ? steinerize(t) : t;
}

}  // namespace tlsteiner
