#include "tlsteiner/twolevel.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "tlsteiner/oracle.hpp"

namespace tlsteiner {
namespace {

Point lex_min(std::span<const Point> group) { return *std::min_element(group.begin(), group.end()); }

TwoLevelTree single_group(const Instance& instance, const SteinerSubroutine& sub) {
  TwoLevelTree out;
  Point q = lex_min(instance.group(0));
  out.top = EmbeddedTree::single(q);
  out.subtrees.push_back(approx_steiner(instance.group(0), sub));
  out.connection_points.push_back(q);
  return out;
}

Coord edge_distance(const EmbeddedTree& t, const TreeEdge& e, const Point& q) {
  Coord best = l1_dist(t.vertices[e.u], q);
  for (const Segment& s : t.segments(e)) best = min(best, l1_dist(s.closest(q), q));
  return best;
}

// Re-embeds every maximal chain of degree-2 Steiner vertices so that it
// passes as close to q as its length allows. A monotone chain between a and
// b can follow any staircase inside B(a, b), so it is rerouted through the
// point of that box nearest to q; other chains flip edges one at a time.
EmbeddedTree reembed_towards(const EmbeddedTree& t, const Point& q) {
  const std::size_t n = t.vertices.size();
  if (n <= 1) return t;
  std::vector<bool> terminal(n, false);
  for (std::size_t v : t.terminals) terminal[v] = true;
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    incident[t.edges[i].u].push_back(i);
    incident[t.edges[i].v].push_back(i);
  }
  auto interior = [&](std::size_t v) { return !terminal[v] && incident[v].size() == 2; };

  EmbeddedTree out = t;
  std::vector<bool> drop_vertex(n, false);
  std::vector<bool> drop_edge(t.edges.size(), false);
  std::vector<bool> seen(t.edges.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> new_paths;
  std::vector<Point> new_corners;

  for (std::size_t a = 0; a < n; ++a) {
    if (interior(a)) continue;
    for (std::size_t first : incident[a]) {
      if (seen[first]) continue;
      std::vector<std::size_t> chain;
      std::size_t v = a;
      std::size_t e = first;
      while (true) {
        seen[e] = true;
        chain.push_back(e);
        v = t.edges[e].u == v ? t.edges[e].v : t.edges[e].u;
        if (!interior(v)) break;
        e = incident[v][0] == e ? incident[v][1] : incident[v][0];
      }
      const std::size_t b = v;
      Coord length;
      Coord current = l1_dist(t.vertices[a], q);
      for (std::size_t ce : chain) {
        length += l1_dist(t.vertices[t.edges[ce].u], t.vertices[t.edges[ce].v]);
        current = min(current, edge_distance(t, t.edges[ce], q));
      }
      const Point& pa = t.vertices[a];
      const Point& pb = t.vertices[b];
      if (length == l1_dist(pa, pb)) {
        Rect box{min(pa.x, pb.x), max(pa.x, pb.x), min(pa.y, pb.y), max(pa.y, pb.y)};
        Point p = box.clamp(q);
        if (l1_dist(p, q) < current) {
          for (std::size_t ce : chain) {
            drop_edge[ce] = true;
            std::size_t u = t.edges[ce].u, w = t.edges[ce].v;
            if (u != a && u != b) drop_vertex[u] = true;
            if (w != a && w != b) drop_vertex[w] = true;
          }
          new_paths.emplace_back(a, b);
          new_corners.push_back(p);
        }
        continue;
      }
      for (std::size_t ce : chain) {
        TreeEdge& edge = out.edges[ce];
        if (edge.embedding == Embedding::kStraight) continue;
        TreeEdge flipped = edge;
        flipped.embedding =
            edge.embedding == Embedding::kHorizontalFirst ? Embedding::kVerticalFirst : Embedding::kHorizontalFirst;
        if (edge_distance(out, flipped, q) < edge_distance(out, edge, q)) edge = flipped;
      }
    }
  }
  if (new_paths.empty()) return out;

  EmbeddedTree rebuilt;
  std::vector<std::size_t> index(n, EmbeddedTree::npos);
  for (std::size_t v = 0; v < n; ++v)
    if (!drop_vertex[v]) index[v] = rebuilt.add_vertex(t.vertices[v], terminal[v]);
  for (std::size_t i = 0; i < out.edges.size(); ++i)
    if (!drop_edge[i]) rebuilt.add_edge(index[out.edges[i].u], index[out.edges[i].v], out.edges[i].embedding);
  for (std::size_t i = 0; i < new_paths.size(); ++i) {
    std::size_t a = index[new_paths[i].first], b = index[new_paths[i].second];
    std::size_t p = rebuilt.add_vertex(new_corners[i]);
    rebuilt.add_edge(a, p);
    rebuilt.add_edge(p, b);
  }
  return rebuilt;
}

void check_beta(const Rational& beta) {
  if (beta.sign() < 0 || beta > Rational(1)) throw std::invalid_argument("beta must lie in [0, 1]");
}

}  // namespace

TwoLevelTree solve_with_connection_points(const Instance& instance, std::span<const Point> q,
                                          const SteinerSubroutine& sub) {
  if (q.size() != instance.k())
    throw std::invalid_argument("expected " + std::to_string(instance.k()) + " connection points, got " +
                                std::to_string(q.size()));
  TwoLevelTree out;
  out.connection_points.assign(q.begin(), q.end());
  out.top = approx_steiner(q, sub);
  for (std::size_t i = 0; i < instance.k(); ++i) {
    std::vector<Point> pts = instance.group(i);
    pts.push_back(q[i]);
    out.subtrees.push_back(approx_steiner(pts, sub));
  }
  return out;
}

TwoLevelTree solve_simple(const Instance& instance, const SteinerSubroutine& sub) {
  if (instance.k() == 1) return single_group(instance, sub);
  std::vector<Point> q;
  for (const auto& g : instance.groups()) q.push_back(lex_min(g));
  return solve_with_connection_points(instance, q, sub);
}

Point bbox_center_point(std::span<const Point> group) { return bounding_box(group).center(); }

bool is_complete(std::span<const Point> group) {
  const Point c = bbox_center_point(group);
  bool ll = false, lr = false, ul = false, ur = false;
  for (const Point& p : group) {
    ll |= p.x <= c.x && p.y <= c.y;
    lr |= p.x >= c.x && p.y <= c.y;
    ul |= p.x <= c.x && p.y >= c.y;
    ur |= p.x >= c.x && p.y >= c.y;
  }
  return ll && lr && ul && ur;
}

Point CanonicalFrame::apply(const Point& p) const {
  Coord x = p.x - center.x, y = p.y - center.y;
  if (swap) std::swap(x, y);
  return {sx < 0 ? -x : x, sy < 0 ? -y : y};
}

Point CanonicalFrame::inverse(const Point& p) const {
  Coord x = sx < 0 ? -p.x : p.x, y = sy < 0 ? -p.y : p.y;
  if (swap) std::swap(x, y);
  return {x + center.x, y + center.y};
}

const char* CanonicalFrame::name() const {
  if (!swap) {
    if (sx > 0 && sy > 0) return "identity";
    if (sx < 0 && sy < 0) return "rotate180";
    return sx < 0 ? "reflect-x" : "reflect-y";
  }
  if (sx < 0 && sy > 0) return "rotate90";
  if (sx > 0 && sy < 0) return "rotate270";
  return sx > 0 ? "transpose" : "anti-transpose";
}

std::array<CanonicalFrame, 8> frame_candidates(const Point& center) {
  return {{
      {center, false, 1, 1},
      {center, true, -1, 1},
      {center, false, -1, -1},
      {center, true, 1, -1},
      {center, false, -1, 1},
      {center, false, 1, -1},
      {center, true, 1, 1},
      {center, true, -1, -1},
  }};
}

Canonical canonicalize(std::span<const Point> group) {
  if (is_complete(group)) throw std::invalid_argument("canonicalize: bounding box is complete");
  const Rect box = bounding_box(group);
  for (const CanonicalFrame& f : frame_candidates(box.center())) {
    Coord width = f.swap ? box.height() : box.width();
    Coord height = f.swap ? box.width() : box.height();
    if (width < height) continue;
    Canonical c{f, {}};
    bool empty = true;
    for (const Point& p : group) {
      c.points.push_back(f.apply(p));
      if (c.points.back().x.sign() < 0 && c.points.back().y.sign() < 0) empty = false;
    }
    if (empty) return c;
  }
  throw std::logic_error("canonicalize: no frame qualifies");
}

Thresholds thresholds(std::span<const Point> canonical_points, const Rational& beta) {
  check_beta(beta);
  if (canonical_points.empty()) throw std::invalid_argument("empty point set");
  Thresholds th;
  th.beta = beta;
  th.tmax = bounding_box(canonical_points).height() / Coord(2);
  // {x < s, y < s} misses p iff s <= max(p.x, p.y); {x > s, y > s} misses p
  // iff s >= min(p.x, p.y).
  Coord lowest = max(canonical_points[0].x, canonical_points[0].y);
  Coord highest = min(canonical_points[0].x, canonical_points[0].y);
  for (const Point& p : canonical_points) {
    lowest = min(lowest, max(p.x, p.y));
    highest = max(highest, min(p.x, p.y));
  }
  th.t1 = min(th.tmax, max(Coord(0), lowest));
  th.t2 = min(th.tmax, max(Coord(0), highest));
  th.t = min(min(th.t1, th.t2), beta * th.tmax);
  return th;
}

Point adjusted_connection_point(std::span<const Point> group, const Rational& beta) {
  check_beta(beta);
  if (is_complete(group)) return bbox_center_point(group);
  Canonical c = canonicalize(group);
  Thresholds th = thresholds(c.points, beta);
  return c.frame.inverse({th.t, th.t});
}

EmbeddedTree refine_subtree(std::span<const Point> group, const Point& q, const SteinerSubroutine& sub) {
  std::vector<Point> with_q(group.begin(), group.end());
  with_q.push_back(q);
  EmbeddedTree direct = approx_steiner(with_q, sub);

  EmbeddedTree refined = reembed_towards(approx_steiner(group, sub), q);
  NearestPoint a = nearest_point_on_tree(refined, q);
  std::size_t at = refined.ensure_vertex(a.point);
  if (a.point == q) {
    if (std::find(refined.terminals.begin(), refined.terminals.end(), at) == refined.terminals.end())
      refined.terminals.push_back(at);
  } else {
    refined.add_edge(at, refined.add_vertex(q, true));
  }
  return tree_length(refined) < tree_length(direct) ? refined : direct;
}

TwoLevelTree solve_adjusted(const Instance& instance, const Rational& beta, const SteinerSubroutine& sub) {
  check_beta(beta);
  if (instance.k() == 1) return single_group(instance, sub);
  TwoLevelTree out;
  for (const auto& g : instance.groups()) out.connection_points.push_back(adjusted_connection_point(g, beta));
  out.top = approx_steiner(out.connection_points, sub);
  for (std::size_t i = 0; i < instance.k(); ++i)
    out.subtrees.push_back(refine_subtree(instance.group(i), out.connection_points[i], sub));
  return out;
}

TwoLevelTree solve_bbox_center(const Instance& instance, const SteinerSubroutine& sub) {
  if (instance.k() == 1) return single_group(instance, sub);
  std::vector<Point> q;
  for (const auto& g : instance.groups()) q.push_back(bbox_center_point(g));
  return solve_with_connection_points(instance, q, sub);
}

FactorSpec factor_f(const Rational& alpha, const Rational& beta) {
  if (alpha < Rational(1) || alpha > Rational(3, 2)) throw std::out_of_range("alpha must lie in [1, 3/2]");
  if (beta.sign() < 0 || beta > Rational(1)) throw std::out_of_range("beta must lie in [0, 1]");
  FactorSpec f{alpha, beta, {}, {}};
  f.terms[0] = Rational(11, 8) * alpha + Rational(1, 4);
  f.terms[1] = Rational(11, 8) * alpha + Rational(3, 8) * alpha * beta;
  f.terms[2] = Rational(3, 2) * alpha - beta / Rational(4) + Rational(1, 4);
  f.value = max(f.terms[0], max(f.terms[1], f.terms[2]));
  return f;
}

BetaOptimum optimize_beta(const Rational& alpha) {
  if (alpha < Rational(1) || alpha > Rational(3, 2)) throw std::out_of_range("alpha must lie in [1, 3/2]");
  // The increasing second term meets the decreasing third one here.
  Rational beta = (alpha + Rational(2)) / (Rational(3) * alpha + Rational(2));
  beta = min(Rational(1), max(Rational(0), beta));
  return {beta, factor_f(alpha, beta).value};
}

TopBox top_level_bbox(const Instance& instance) {
  struct Entry {
    Point p;
    std::size_t group;
  };
  std::vector<Entry> by_y;
  std::vector<Coord> xs;
  for (std::size_t i = 0; i < instance.k(); ++i)
    for (const Point& p : instance.group(i)) {
      by_y.push_back({p, i});
      xs.push_back(p.x);
    }
  std::sort(by_y.begin(), by_y.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.p.y, a.p.x, a.group) < std::tie(b.p.y, b.p.x, b.group);
  });
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const std::size_t k = instance.k();
  bool found = false;
  Rect best;
  auto better = [](const Rect& a, const Rect& b) {
    Coord sa = a.semiperimeter(), sb = b.semiperimeter();
    if (sa != sb) return sa < sb;
    Coord aa = a.area(), ab = b.area();
    if (aa != ab) return aa < ab;
    return std::tie(a.xmin, a.ymin, a.xmax, a.ymax) < std::tie(b.xmin, b.ymin, b.xmax, b.ymax);
  };

  std::vector<const Entry*> window;
  std::vector<std::size_t> count(k);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i; j < xs.size(); ++j) {
      if (found && xs[j] - xs[i] > best.semiperimeter()) break;
      window.clear();
      for (const Entry& e : by_y)
        if (xs[i] <= e.p.x && e.p.x <= xs[j]) window.push_back(&e);
      std::fill(count.begin(), count.end(), 0);
      std::size_t covered = 0;
      std::size_t lo = 0;
      for (std::size_t hi = 0; hi < window.size(); ++hi) {
        covered += count[window[hi]->group]++ == 0;
        while (covered == k) {
          Rect r{xs[i], xs[j], window[lo]->p.y, window[hi]->p.y};
          if (!found || better(r, best)) {
            best = r;
            found = true;
          }
          covered -= --count[window[lo]->group] == 0;
          ++lo;
        }
      }
    }
  }
  TopBox out{best, {}};
  for (const auto& g : instance.groups()) {
    std::vector<Point> inside;
    for (const Point& p : g)
      if (best.contains(p)) inside.push_back(p);
    out.witnesses.push_back(lex_min(inside));
  }
  return out;
}

TwoLevelTree solve_small_top(const Instance& instance, const SteinerSubroutine& sub) {
  if (instance.k() == 1) return single_group(instance, sub);
  return solve_with_connection_points(instance, top_level_bbox(instance).witnesses, sub);
}

SmallTopCertificate small_top_certificate(const Instance& instance, const TwoLevelTree& t,
                                          const SteinerSubroutine& sub) {
  SmallTopCertificate c;
  c.box = top_level_bbox(instance).box;
  c.u = instance.k() >= 2 ? u_bound(instance.k()) : Rational(0);
  c.top_length = tree_length(t.top);
  c.top_bound = sub.alpha() * c.u * c.box.semiperimeter();
  c.holds = c.top_length <= c.top_bound;
  return c;
}

}  // namespace tlsteiner
