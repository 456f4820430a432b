#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "support/brute.hpp"
#include "tlsteiner/lifting.hpp"
#include "tlsteiner/maxflow.hpp"
#include "tlsteiner/oracle.hpp"
#include "tlsteiner/twolevel.hpp"

using namespace tlsteiner;

namespace {

Point P(std::int64_t x, std::int64_t y) { return {Rational(x), Rational(y)}; }

Instance two_pairs() { return Instance({{P(0, 0), P(1, 0)}, {P(0, 0), P(-1, 0)}}); }
Instance two_corners() { return Instance({{P(0, 0), P(1, 0), P(0, 1)}, {P(0, 0), P(-1, 0), P(0, -1)}}); }

LiftedVertex V(std::int64_t x, std::int64_t y, std::vector<Coord> lift) { return {P(x, y), std::move(lift)}; }

std::set<std::tuple<Point, std::size_t>> as_set(const std::vector<LiftedPoint>& pts) {
  std::set<std::tuple<Point, std::size_t>> out;
  for (const LiftedPoint& p : pts) out.insert({p.base, p.layer});
  return out;
}

/// Joins u and v by a staircase that changes x, then y, then each lifted
/// coordinate in turn.
void connect_axis(LiftedTree& t, std::size_t u, std::size_t v) {
  LiftedVertex cur = t.vertices()[u];
  const LiftedVertex target = t.vertices()[v];
  std::size_t prev = u;
  auto step = [&](const LiftedVertex& next) {
    if (next == cur) return;
    std::size_t w = next == target ? v : t.add_vertex(next);
    t.add_edge(prev, w);
    prev = w;
    cur = next;
  };
  LiftedVertex n = cur;
  n.base.x = target.base.x;
  step(n);
  n.base.y = target.base.y;
  step(n);
  for (std::size_t j = 0; j < n.lift.size(); ++j) {
    n.lift[j] = target.lift[j];
    step(n);
  }
}

/// Random lifted tree over the lifted terminals of `instance`: terminals and
/// a few Steiner points with arbitrary lifted coordinates in [0, K], joined
/// by staircases along a random spanning tree.
LiftedTree random_lifted_tree(std::mt19937_64& rng, const Instance& instance, const Coord& K, std::int64_t range) {
  const std::size_t k = instance.k();
  LiftedTree t(k);
  for (const LiftedPoint& p : lift_instance(instance, K)) t.mark_terminal(t.add_vertex(p.base, p.layer, K), p.layer);
  std::size_t steiner = rng() % 4;
  std::uniform_int_distribution<std::int64_t> c(0, range);
  for (std::size_t s = 0; s < steiner; ++s) {
    std::vector<Coord> lift(k);
    for (Coord& x : lift) x = K * Rational(static_cast<std::int64_t>(rng() % 5), 4);
    t.add_vertex(LiftedVertex{P(c(rng), c(rng)), lift});
  }
  const std::size_t n = t.vertices().size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 1; i < n; ++i) connect_axis(t, order[rng() % i], order[i]);
  return t;
}

}  // namespace

TEST_CASE("max_flow_min_cut examples") {
  FlowGraph parallel{2, {}};
  parallel.add_edge(0, 1);
  parallel.add_edge(0, 1);
  CHECK(max_flow_min_cut(parallel, 0, 1).value == 2);

  FlowGraph path{3, {}};
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  MinCut c = max_flow_min_cut(path, 0, 2);
  CHECK(c.value == 1);
  CHECK(c.source_side[0]);
  CHECK_FALSE(c.source_side[2]);

  FlowGraph grid{9, {}};
  std::vector<std::array<std::size_t, 3>> brute_edges;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t col = 0; col < 3; ++col) {
      std::size_t v = 3 * r + col;
      if (col < 2) {
        grid.add_edge(v, v + 1);
        brute_edges.push_back({v, v + 1, 1});
      }
      if (r < 2) {
        grid.add_edge(v, v + 3);
        brute_edges.push_back({v, v + 3, 1});
      }
    }
  CHECK(brute::min_cut_by_enumeration(9, brute_edges, 0, 8) == 2);
  CHECK(max_flow_min_cut(grid, 0, 8).value == 2);

  CHECK_THROWS_AS(max_flow_min_cut(path, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(max_flow_min_cut(path, 1, 1), std::invalid_argument);
}

TEST_CASE("max_flow_min_cut equals the enumerated min cut") {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 300; ++it) {
    std::size_t n = 2 + rng() % 11;
    FlowGraph g{n, {}};
    std::vector<std::array<std::size_t, 3>> edges;
    std::size_t m = rng() % (2 * n + 1);
    for (std::size_t e = 0; e < m; ++e) {
      std::size_t u = rng() % n, v = rng() % n;
      if (u == v) continue;
      std::size_t cap = it % 2 ? 1 : 1 + rng() % 4;
      g.add_edge(u, v, static_cast<std::int64_t>(cap));
      edges.push_back({u, v, cap});
    }
    MinCut c = max_flow_min_cut(g, 0, n - 1);
    CHECK(c.value == brute::min_cut_by_enumeration(n, edges, 0, n - 1));
    CHECK(c.source_side[0]);
    CHECK_FALSE(c.source_side[n - 1]);
    std::int64_t across = 0;
    for (const auto& e : edges)
      if (c.source_side[e[0]] != c.source_side[e[1]]) across += static_cast<std::int64_t>(e[2]);
    CHECK(across == c.value);
  }
}

TEST_CASE("lift_instance and lifted_dist examples") {
  std::vector<LiftedPoint> pts = lift_instance(two_pairs(), Rational(2));
  REQUIRE(pts.size() == 4);
  LiftedPoint a{P(0, 0), 1}, b{P(0, 0), 2};
  CHECK(as_set(pts).count({P(0, 0), 1}));
  CHECK(as_set(pts).count({P(0, 0), 2}));
  CHECK(lifted_dist(a, b, Rational(2)) == 4);
  CHECK(lifted_dist({P(0, 0), 1}, {P(1, 0), 1}, Rational(2)) == 1);
  CHECK(lifted_dist({P(0, 0), 1}, {P(1, 0), 2}, Rational(10)) == 21);
  CHECK(lifted_dist({P(0, 0), 0}, {P(1, 0), 2}, Rational(10)) == 11);

  CHECK_THROWS_AS(lift_instance(two_pairs(), Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(lift_instance(Instance({{P(0, 0), P(1, 1)}}), Rational(5)), std::invalid_argument);
}

TEST_CASE("lifted_dist equals the L1 distance of the embedded points") {
  std::mt19937_64 rng(73);
  for (int it = 0; it < 200; ++it) {
    Instance in = brute::random_instance(rng, 2 + rng() % 3, 6, 10);
    Coord K = bounding_box(in.all_points()).semiperimeter() + Rational(static_cast<std::int64_t>(1 + rng() % 3));
    auto pts = lift_instance(in, K);
    CHECK(pts.size() == in.terminal_count());
    const LiftedPoint& a = pts[rng() % pts.size()];
    const LiftedPoint& b = pts[rng() % pts.size()];
    LiftedTree t(in.k());
    t.add_vertex(a.base, a.layer, K);
    t.add_vertex(b.base, b.layer, K);
    const LiftedVertex& va = t.vertices()[0];
    const LiftedVertex& vb = t.vertices()[1];
    Coord d = l1_dist(va.base, vb.base);
    for (std::size_t j = 0; j < in.k(); ++j) d += abs(va.lift[j] - vb.lift[j]);
    CHECK(lifted_dist(a, b, K) == d);
  }
}

TEST_CASE("lift_tree of the optimum for the two-pair example") {
  ExactTwoLevel opt = exact_two_level(two_pairs());
  REQUIRE(opt.length == 2);
  LiftedTree t = lift_tree(opt.tree, two_pairs(), Rational(2));
  CHECK(t.length() == 6);
  CHECK(t.is_flat(Rational(2)));
  CHECK(t.is_connected());
  CHECK(t.lifted_edge_count(0) == 1);
  CHECK(t.lifted_edge_count(1) == 1);
  CHECK(as_set(t.terminal_points()) == as_set(lift_instance(two_pairs(), Rational(2))));

  LiftedTree f = flatten(t, Rational(2));
  CHECK(f.length() == 6);
  TwoLevelTree back = project_to_two_level(normalize_single_edges(f, Rational(2)), Rational(2));
  CHECK(back.total_length() == 2);
  CHECK(validate_two_level(back, two_pairs()).empty());
}

TEST_CASE("flatten removes a redundant partial-height jog") {
  // Two layer-1 terminals hang from a plane path at height K/2 in lifted
  // dimension 1, which drops to the top level and climbs to a layer-2 terminal.
  const Coord K(4), half(2), zero(0);
  Instance in({{P(0, 0), P(2, 0)}, {P(1, 0)}});
  LiftedTree t(2);
  std::size_t a1 = t.add_vertex(P(0, 0), 1, K), a2 = t.add_vertex(P(2, 0), 1, K), b = t.add_vertex(P(1, 0), 2, K);
  t.mark_terminal(a1, 1);
  t.mark_terminal(a2, 1);
  t.mark_terminal(b, 2);
  std::size_t m0 = t.add_vertex(V(0, 0, {half, zero})), m1 = t.add_vertex(V(1, 0, {half, zero}));
  std::size_t m2 = t.add_vertex(V(2, 0, {half, zero})), top = t.add_vertex(V(1, 0, {zero, zero}));
  t.add_edge(a1, m0);
  t.add_edge(a2, m2);
  t.add_edge(m0, m1);
  t.add_edge(m1, m2);
  t.add_edge(m1, top);
  t.add_edge(top, b);
  CHECK(t.length() == 12);
  CHECK_FALSE(t.is_flat(K));

  // Dimension 1 cut: source {top component}, middle component, sink {a1},{a2}.
  CHECK(brute::min_cut_by_enumeration(3, {{0, 1, 1}, {1, 2, 1}, {1, 2, 1}}, 0, 2) == 1);

  LiftedTree f = flatten(t, K);
  CHECK(f.is_flat(K));
  CHECK(f.is_connected());
  CHECK(f.length() == t.length() - half);
  CHECK(as_set(f.terminal_points()) == as_set(lift_instance(in, K)));
  TwoLevelTree two = project_to_two_level(normalize_single_edges(f, K), K);
  CHECK(two.total_length() == 2);
  CHECK(validate_two_level(two, in).empty());
}

TEST_CASE("flatten and normalize leave lifted heuristic trees unchanged") {
  std::mt19937_64 rng(79);
  for (int it = 0; it < 60; ++it) {
    Instance in = brute::random_instance(rng, 2 + rng() % 3, 4 + rng() % 8, 12);
    Coord K = bounding_box(in.all_points()).semiperimeter() + Rational(1);
    TwoLevelTree t = solve_bbox_center(in, SteinerSubroutine::rmst());
    LiftedTree l = lift_tree(t, in, K);
    CHECK(l.length() == t.total_length() + Coord(static_cast<std::int64_t>(in.k())) * K);
    LiftedTree f = flatten(l, K);
    CHECK(f.length() == l.length());
    LiftedTree n = normalize_single_edges(f, K);
    CHECK(n.length() == l.length());
  }
}

TEST_CASE("normalize_single_edges replaces a second lifted edge") {
  const Coord K(10), zero(0);
  Instance in({{P(0, 0), P(1, 0)}, {P(5, 0), P(6, 0)}});
  LiftedTree t(2);
  std::size_t t0 = t.add_vertex(P(0, 0), 0, K), t1 = t.add_vertex(P(1, 0), 0, K);
  std::size_t a = t.add_vertex(P(0, 0), 1, K), b = t.add_vertex(P(1, 0), 1, K);
  std::size_t c = t.add_vertex(P(5, 0), 0, K), d = t.add_vertex(P(5, 0), 2, K), e = t.add_vertex(P(6, 0), 2, K);
  t.mark_terminal(a, 1);
  t.mark_terminal(b, 1);
  t.mark_terminal(d, 2);
  t.mark_terminal(e, 2);
  t.add_edge(t0, a);
  t.add_edge(t1, b);
  t.add_edge(t0, t1);
  t.add_edge(t1, c);
  t.add_edge(c, d);
  t.add_edge(d, e);
  REQUIRE(t.length() == 36);
  REQUIRE(t.lifted_edge_count(0) == 2);

  LiftedTree n = normalize_single_edges(t, K);
  CHECK(n.lifted_edge_count(0) == 1);
  CHECK(n.lifted_edge_count(1) == 1);
  CHECK(n.length() == 36 - 10 + 1);
  CHECK(n.length() < t.length());
  CHECK(as_set(n.terminal_points()) == as_set(lift_instance(in, K)));
  TwoLevelTree two = project_to_two_level(n, K);
  CHECK(two.total_length() == 7);
  CHECK(validate_two_level(two, in).empty());

  // Already single-edged: unchanged.
  CHECK(normalize_single_edges(n, K).length() == n.length());
}

TEST_CASE("normalize_single_edges without layer terminals in a direction") {
  const Coord K(4);
  LiftedTree t(3);
  std::size_t a = t.add_vertex(P(0, 0), 1, K), b = t.add_vertex(P(0, 0), 0, K);
  std::size_t c = t.add_vertex(P(1, 0), 0, K), d = t.add_vertex(P(1, 0), 2, K);
  t.mark_terminal(a, 1);
  t.mark_terminal(d, 2);
  t.add_edge(a, b);
  t.add_edge(b, c);
  t.add_edge(c, d);
  LiftedTree n = normalize_single_edges(t, K);
  CHECK(n.length() == t.length());
  CHECK(n.lifted_edge_count(2) == 0);
}

TEST_CASE("project_to_two_level reports structural problems") {
  const Coord K(4);
  LiftedTree t(2);
  std::size_t a = t.add_vertex(P(0, 0), 1, K), b = t.add_vertex(P(0, 0), 0, K);
  t.mark_terminal(a, 1);
  t.add_edge(a, b);
  CHECK_THROWS_AS(project_to_two_level(t, K), std::runtime_error);

  LiftedTree bent(1);
  std::size_t u = bent.add_vertex(V(0, 0, {Coord(0)})), w = bent.add_vertex(V(0, 0, {Coord(1)}));
  bent.add_edge(u, w);
  CHECK_THROWS(project_to_two_level(bent, K));
  CHECK_THROWS_AS(t.add_edge(a, t.add_vertex(P(1, 1), 2, K)), std::invalid_argument);
}

TEST_CASE("lifted optimum projects to the tight example lengths") {
  for (const Instance& in : {two_pairs(), two_corners()}) {
    ExactTwoLevel opt = exact_two_level(in);
    Coord K = bounding_box(in.all_points()).semiperimeter() + Rational(1);
    TwoLevelTree back = project_to_two_level(normalize_single_edges(flatten(lift_tree(opt.tree, in, K), K), K), K);
    CHECK(back.total_length() == opt.length);
    CHECK(validate_two_level(back, in).empty());
  }
  CHECK(exact_two_level(two_pairs()).length == 2);
  CHECK(exact_two_level(two_corners()).length == 4);
}

TEST_CASE("round trip never lengthens heuristic trees") {
  std::mt19937_64 rng(83);
  const SteinerSubroutine sub = SteinerSubroutine::rmst();
  for (int it = 0; it < 80; ++it) {
    Instance in = brute::random_instance(rng, 2 + rng() % 3, 4 + rng() % 10, 15);
    Coord K = bounding_box(in.all_points()).semiperimeter() + Rational(1);
    for (const TwoLevelTree& t : {solve_simple(in, sub), solve_adjusted(in, Rational(7, 13), sub), solve_small_top(in, sub)}) {
      LiftedTree l = lift_tree(t, in, K);
      CHECK(l.length() == t.total_length() + Coord(static_cast<std::int64_t>(in.k())) * K);
      TwoLevelTree back = project_to_two_level(normalize_single_edges(flatten(l, K), K), K);
      CHECK(back.total_length() <= t.total_length());
      CHECK(validate_two_level(back, in).empty());
    }
  }
}

TEST_CASE("flatten and normalize on arbitrary lifted trees") {
  std::mt19937_64 rng(89);
  for (int it = 0; it < 150; ++it) {
    Instance in = brute::random_instance(rng, 2 + rng() % 2, 3 + rng() % 5, 6);
    Coord K = bounding_box(in.all_points()).semiperimeter() + Rational(1 + static_cast<std::int64_t>(rng() % 3));
    LiftedTree t = random_lifted_tree(rng, in, K, 6);
    REQUIRE(t.is_connected());
    auto terminals = as_set(lift_instance(in, K));

    LiftedTree f = flatten(t, K);
    CHECK(f.is_flat(K));
    CHECK(f.is_connected());
    CHECK(f.length() <= t.length());
    CHECK(as_set(f.terminal_points()) == terminals);

    LiftedTree n = normalize_single_edges(f, K);
    CHECK(n.length() <= f.length());
    CHECK(n.is_flat(K));
    CHECK(n.is_connected());
    CHECK(as_set(n.terminal_points()) == terminals);
    for (std::size_t j = 0; j < in.k(); ++j) CHECK(n.lifted_edge_count(j) == 1);

    TwoLevelTree two = project_to_two_level(n, K);
    CHECK(two.total_length() == n.length() - Coord(static_cast<std::int64_t>(in.k())) * K);
    CHECK(validate_two_level(two, in).empty());
    CHECK(two.total_length() >= exact_two_level(in).length);
  }
}
