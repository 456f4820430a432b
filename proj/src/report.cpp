#include "tlsteiner/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tlsteiner/io.hpp"
#include "tlsteiner/twolevel.hpp"

namespace tlsteiner {
namespace {

using json = nlohmann::json;

json exact_json(const Rational& r) { return {{"exact", r.to_string()}, {"decimal", r.to_significant(6)}}; }

json point_json(const Point& p) { return json::array({coord_literal(p.x), coord_literal(p.y)}); }

std::string point_text(const Point& p) { return "(" + p.x.to_string() + ", " + p.y.to_string() + ")"; }

std::string length_text(const Rational& r) { return r.to_string() + " (" + r.to_significant(6) + ")"; }

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

}  // namespace

void record_lengths(RunReport& report, const TwoLevelTree& t) {
  report.connection_points = t.connection_points;
  report.top_length = tree_length(t.top);
  report.subtree_lengths.clear();
  for (const EmbeddedTree& s : t.subtrees) report.subtree_lengths.push_back(tree_length(s));
  report.total_length = t.total_length();
}

Rational optimality_ratio(const Coord& total, const Coord& optimum) {
  if (optimum.sign() != 0) return total / optimum;
  if (total.sign() == 0) return Rational(1);
  throw std::domain_error("ratio against a zero optimum");
}

std::string report_text(const RunReport& r) {
  std::ostringstream os;
  os << "algorithm:   " << r.algorithm << "\n";
  os << "subroutine:  " << r.subroutine << "\n";
  if (r.beta) os << "beta:        " << r.beta->to_string() << "\n";
  if (!r.forced_connection_points.empty()) {
    os << "forced q:   ";
    for (const Point& p : r.forced_connection_points) os << ' ' << point_text(p);
    os << "\n";
  }
  os << "connection: ";
  for (const Point& p : r.connection_points) os << ' ' << point_text(p);
  os << "\n";
  os << "top length:  " << length_text(r.top_length) << "\n";
  for (std::size_t i = 0; i < r.subtree_lengths.size(); ++i)
    os << "T_" << i + 1 << " length: " << length_text(r.subtree_lengths[i]) << "\n";
  os << "total:       " << length_text(r.total_length) << "\n";
  if (r.optimum) os << "optimum:     " << length_text(*r.optimum) << "\n";
  if (r.ratio) os << "ratio:       " << length_text(*r.ratio) << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
  os << "time (ms):   " << buf << "\n";
  return os.str();
}

std::string report_json(const RunReport& r) {
  json j;
  j["algorithm"] = r.algorithm;
  j["subroutine"] = r.subroutine;
  j["beta"] = r.beta ? json(r.beta->to_string()) : json(nullptr);
  j["forced_connection_points"] = json::array();
  for (const Point& p : r.forced_connection_points) j["forced_connection_points"].push_back(point_json(p));
  j["connection_points"] = json::array();
  for (const Point& p : r.connection_points) j["connection_points"].push_back(point_json(p));
  j["top_length"] = exact_json(r.top_length);
  j["subtree_lengths"] = json::array();
  for (const Coord& c : r.subtree_lengths) j["subtree_lengths"].push_back(exact_json(c));
  j["total_length"] = exact_json(r.total_length);
  j["optimum"] = r.optimum ? exact_json(*r.optimum) : json(nullptr);
  j["ratio"] = r.ratio ? exact_json(*r.ratio) : json(nullptr);
  j["wall_ms"] = r.wall_ms;
  return j.dump(2) + "\n";
}

std::string render_svg(const Instance& instance, const TwoLevelTree& t) {
  std::vector<Point> pts = instance.all_points();
  pts.insert(pts.end(), t.top.vertices.begin(), t.top.vertices.end());
  for (const EmbeddedTree& s : t.subtrees) pts.insert(pts.end(), s.vertices.begin(), s.vertices.end());
  const Rect box = bounding_box(pts);
  const double margin = 20, size = 760;
  double span = std::max(box.width().to_double(), box.height().to_double());
  const double scale = span > 0 ? size / span : 1;
  const double x0 = box.xmin.to_double(), y1 = box.ymax.to_double();
  auto sx = [&](const Coord& x) { return margin + (x.to_double() - x0) * scale; };
  auto sy = [&](const Coord& y) { return margin + (y1 - y.to_double()) * scale; };
  const double w = margin * 2 + box.width().to_double() * scale;
  const double h = margin * 2 + box.height().to_double() * scale;

  std::ostringstream os;
  os.precision(10);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n";
  auto draw_tree = [&](const EmbeddedTree& tree, const char* colour, const char* id, double width) {
    os << "<g id=\"" << id << "\" stroke=\"" << colour << "\" stroke-width=\"" << width << "\" fill=\"none\">\n";
    for (const Segment& s : tree.all_segments())
      os << "<polyline points=\"" << sx(s.a.x) << ',' << sy(s.a.y) << ' ' << sx(s.b.x) << ',' << sy(s.b.y)
         << "\"/>\n";
    os << "</g>\n";
  };
  for (std::size_t i = 0; i < t.subtrees.size(); ++i) {
    std::string id = "subtree-" + std::to_string(i + 1);
    draw_tree(t.subtrees[i], kPalette[i % std::size(kPalette)], id.c_str(), 2);
  }
  draw_tree(t.top, "#000000", "top", 3);
  for (std::size_t i = 0; i < instance.k(); ++i) {
    os << "<g id=\"terminals-" << i + 1 << "\" fill=\"" << kPalette[i % std::size(kPalette)] << "\">\n";
    for (const Point& p : instance.group(i))
      os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"4\"/>\n";
    os << "</g>\n";
  }
  os << "<g id=\"connection-points\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\">\n";
  for (const Point& q : t.connection_points)
    os << "<rect x=\"" << sx(q.x) - 6 << "\" y=\"" << sy(q.y) - 6 << "\" width=\"12\" height=\"12\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

double fit_exponent(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const BenchRow& r : rows) {
    double x = std::log(static_cast<double>(r.n)), y = std::log(r.seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(rows.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

BenchResult run_bench(const BenchOptions& o) {
  if (o.min_n == 0 || o.max_n < o.min_n || o.points_per_group == 0)
    throw std::invalid_argument("bench needs 0 < min_n <= max_n and points_per_group > 0");
  std::vector<std::size_t> ladder;
  for (std::size_t n = o.min_n; n < o.max_n; n *= 2) ladder.push_back(n);
  ladder.push_back(o.max_n);

  const Rational beta = optimize_beta(o.sub.alpha()).beta;
  BenchResult result;
  for (std::size_t n : ladder) {
    const std::size_t k = std::max<std::size_t>(1, n / o.points_per_group);
    const std::size_t per = std::max<std::size_t>(1, n / k);
    if (o.sub.mode == SubroutineMode::kExact && (per + 1 > o.sub.exact_limit || k > o.sub.exact_limit))
      throw std::length_error("exact subroutine limit is " + std::to_string(o.sub.exact_limit) +
                              " terminals per tree; n=" + std::to_string(n) + " needs groups of " +
                              std::to_string(per) + " plus a connection point and a top tree on " +
                              std::to_string(k) + " points");
    Instance instance = generate_instance(o.seed + n, k, per, Distribution::kUniform, o.extent);
    // Small sizes are repeated so the timer resolution does not dominate.
    std::size_t reps = 0;
    double elapsed = 0;
    Coord length;
    do {
      auto start = std::chrono::steady_clock::now();
      TwoLevelTree t = solve_adjusted(instance, beta, o.sub);
      elapsed += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      length = t.total_length();
      ++reps;
    } while (elapsed < 0.05 && reps < 1000);
    result.rows.push_back({instance.terminal_count(), k, elapsed / static_cast<double>(reps), length});
  }
  result.exponent = fit_exponent(result.rows);
  return result;
}

}  // namespace tlsteiner
