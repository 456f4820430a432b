#include "tlsteiner/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tlsteiner/io.hpp"
#include "tlsteiner/oracle.hpp"
#include "tlsteiner/report.hpp"
#include "tlsteiner/twolevel.hpp"

namespace tlsteiner {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

SteinerSubroutine parse_sub(const std::string& name) {
  if (name == "rmst") return SteinerSubroutine::rmst();
  if (name == "exact") return SteinerSubroutine::exact();
  throw std::invalid_argument("unknown subroutine '" + name + "' (expected rmst or exact)");
}

Instance load(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  Instance instance = parse_instance(read_file(path), &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return instance;
}

struct SolveArgs {
  std::string file;
  std::string algo = "adjusted";
  std::string sub = "rmst";
  std::string beta;
  std::string connect;
  bool oracle = false;
  std::string svg;
  bool json = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kAlgos = {"simple", "bbox-center", "adjusted", "small-top"};
  if (std::find(kAlgos.begin(), kAlgos.end(), a.algo) == kAlgos.end())
    throw std::invalid_argument("unknown algorithm '" + a.algo + "' (expected simple, bbox-center, adjusted or small-top)");
  const SteinerSubroutine sub = parse_sub(a.sub);
  Instance instance = load(a.file, err);

  RunReport report;
  report.algorithm = a.algo;
  report.subroutine = sub.name();
  if (!a.beta.empty()) {
    Rational beta = Rational::parse(a.beta);
    if (beta.sign() < 0 || beta > Rational(1)) throw std::invalid_argument("beta must lie in [0, 1], got " + a.beta);
    if (a.algo != "adjusted") throw std::invalid_argument("--beta applies only to --algo adjusted");
    report.beta = beta;
  } else if (a.algo == "adjusted") {
    report.beta = optimize_beta(sub.alpha()).beta;
  }
  if (!a.connect.empty()) report.forced_connection_points = parse_point_list(a.connect);

  auto start = std::chrono::steady_clock::now();
  TwoLevelTree t;
  if (!report.forced_connection_points.empty()) {
    t = solve_with_connection_points(instance, report.forced_connection_points, sub);
  } else if (a.algo == "simple") {
    t = solve_simple(instance, sub);
  } else if (a.algo == "bbox-center") {
    t = solve_bbox_center(instance, sub);
  } else if (a.algo == "adjusted") {
    t = solve_adjusted(instance, *report.beta, sub);
  } else {
    t = solve_small_top(instance, sub);
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  record_lengths(report, t);

  if (a.oracle) {
    ExactTwoLevel opt = exact_two_level(instance);
    report.optimum = opt.length;
    report.ratio = optimality_ratio(report.total_length, opt.length);
  }
  if (!a.svg.empty()) write_file(a.svg, render_svg(instance, t));
  out << (a.json ? report_json(report) : report_text(report));
  return 0;
}

int cmd_oracle(const std::string& file, const std::string& svg, bool json, std::ostream& out, std::ostream& err) {
  Instance instance = load(file, err);
  auto start = std::chrono::steady_clock::now();
  ExactTwoLevel opt = exact_two_level(instance);
  RunReport report;
  report.algorithm = "oracle";
  report.subroutine = "exact";
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  record_lengths(report, opt.tree);
  report.optimum = opt.length;
  if (!svg.empty()) write_file(svg, render_svg(instance, opt.tree));
  out << (json ? report_json(report) : report_text(report));
  return 0;
}

int cmd_bench(const BenchOptions& o, bool json, std::ostream& out) {
  BenchResult r = run_bench(o);
  if (json) {
    nlohmann::json j;
    j["subroutine"] = o.sub.name();
    j["rows"] = nlohmann::json::array();
    for (const BenchRow& row : r.rows)
      j["rows"].push_back({{"n", row.n}, {"k", row.k}, {"seconds", row.seconds}, {"length", row.length.to_significant(6)}});
    j["exponent"] = r.exponent;
    out << j.dump(2) << "\n";
    return 0;
  }
  char line[128];
  out << "        n       k     seconds\n";
  for (const BenchRow& row : r.rows) {
    std::snprintf(line, sizeof line, "%9zu %7zu %11.6f\n", row.n, row.k, row.seconds);
    out << line;
  }
  std::snprintf(line, sizeof line, "fitted exponent: %.3f\n", r.exponent);
  out << line;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-level rectilinear Steiner tree solvers"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "Run a two-level heuristic on an instance file");
  s->add_option("file", solve.file, "Instance JSON")->required();
  s->add_option("--algo", solve.algo, "simple | bbox-center | adjusted | small-top")->capture_default_str();
  s->add_option("--sub", solve.sub, "Steiner subroutine: rmst | exact")->capture_default_str();
  s->add_option("--beta", solve.beta, "Adjusted-center parameter, p/q or decimal (default: optimal for the subroutine)");
  s->add_option("--connect", solve.connect, "Forced connection points \"x,y;x,y;...\"");
  s->add_flag("--oracle", solve.oracle, "Also compute the exact optimum and the ratio");
  s->add_option("--svg", solve.svg, "Write an SVG drawing to this path");
  s->add_flag("--json", solve.json, "Machine-readable report");

  std::string oracle_file, oracle_svg;
  bool oracle_json = false;
  CLI::App* o = app.add_subcommand("oracle", "Exact two-level optimum (small instances)");
  o->add_option("file", oracle_file, "Instance JSON")->required();
  o->add_option("--svg", oracle_svg, "Write an SVG drawing to this path");
  o->add_flag("--json", oracle_json, "Machine-readable report");

  std::uint64_t gen_seed = 1;
  std::size_t gen_k = 2, gen_per = 2;
  std::string gen_dist = "uniform", gen_out;
  std::int64_t gen_extent = 100;
  CLI::App* g = app.add_subcommand("gen", "Generate a random instance");
  g->add_option("--seed", gen_seed)->capture_default_str();
  g->add_option("--k", gen_k, "Number of groups")->capture_default_str();
  g->add_option("--per-group", gen_per, "Points per group")->capture_default_str();
  g->add_option("--dist", gen_dist, "uniform | clustered")->capture_default_str();
  g->add_option("--extent", gen_extent, "Coordinates lie in [0, extent]")->capture_default_str();
  g->add_option("-o,--output", gen_out, "Write to this file instead of stdout");

  BenchOptions bench;
  std::string bench_sub = "rmst";
  bool bench_json = false;
  CLI::App* b = app.add_subcommand("bench", "Time the adjusted solver over a doubling ladder of sizes");
  b->add_option("--sub", bench_sub, "rmst | exact")->capture_default_str();
  b->add_option("--min", bench.min_n, "Smallest n")->capture_default_str();
  b->add_option("--max", bench.max_n, "Largest n")->capture_default_str();
  b->add_option("--per-group", bench.points_per_group)->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_flag("--json", bench_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code;
  }

  try {
    if (*s) return cmd_solve(solve, out, err);
    if (*o) return cmd_oracle(oracle_file, oracle_svg, oracle_json, out, err);
    if (*g) {
      Distribution d;
      if (gen_dist == "uniform")
        d = Distribution::kUniform;
      else if (gen_dist == "clustered")
        d = Distribution::kClustered;
      else
        throw std::invalid_argument("unknown distribution '" + gen_dist + "'");
      std::string text = print_instance(generate_instance(gen_seed, gen_k, gen_per, d, gen_extent));
      if (gen_out.empty())
        out << text;
      else
        write_file(gen_out, text);
      return 0;
    }
    bench.sub = parse_sub(bench_sub);
    return cmd_bench(bench, bench_json, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tlsteiner
