#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "support/brute.hpp"
#include "tlsteiner/cli.hpp"
#include "tlsteiner/io.hpp"
#include "tlsteiner/report.hpp"
#include "tlsteiner/twolevel.hpp"

using namespace tlsteiner;
namespace fs = std::filesystem;

namespace {

Point P(std::int64_t x, std::int64_t y) { return {Rational(x), Rational(y)}; }

const char* kTwoPairs = R"({"groups": [[[0,0],[1,0]],[[0,0],[-1,0]]]})";
const char* kTwoCorners = R"({"groups": [[[0,0],[1,0],[0,1]],[[0,0],[-1,0],[0,-1]]]})";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tlsteiner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / ("tlsteiner_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InstanceError& e) {
    return e.what();
  }
  return "";
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

/// Checks that tags nest properly and every attribute value is quoted.
bool well_formed_xml(const std::string& s) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  bool root_seen = false;
  while ((i = s.find('<', i)) != std::string::npos) {
    std::size_t j = s.find('>', i);
    if (j == std::string::npos) return false;
    std::string tag = s.substr(i + 1, j - i - 1);
    i = j + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (count(tag, "\"") % 2) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    if (stack.empty() && root_seen) return false;
    root_seen = true;
    if (tag.back() == '/') continue;
    stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
  }
  return root_seen && stack.empty();
}

}  // namespace

TEST_CASE("parse_instance examples") {
  Instance a = parse_instance(kTwoPairs);
  CHECK(a == Instance({{P(0, 0), P(1, 0)}, {P(0, 0), P(-1, 0)}}));

  Instance b = parse_instance(R"({"groups": [[["0.5","0.5"]]]})");
  REQUIRE(b.k() == 1);
  CHECK(b.group(0) == std::vector<Point>{{Rational(1, 2), Rational(1, 2)}});

  Instance c = parse_instance(R"({"groups": [[["1/3", 2.25], ["-7", "1e1"]]]})");
  CHECK(c.group(0) == std::vector<Point>{{Rational(1, 3), Rational(9, 4)}, {Rational(-7), Rational(10)}});

  CHECK(parse_error(R"({"groups": []})") == "no groups");
}

TEST_CASE("parse_instance errors carry their location") {
  std::string malformed = parse_error("{\"groups\": [[[0,0],\n[1,0]]");
  CHECK(malformed.find("malformed JSON") == 0);
  CHECK(malformed.find("line 2") != std::string::npos);

  CHECK(parse_error(R"({"groups": [[[0,0]], []]})") == "/groups/1: empty group");
  std::string nonnum = parse_error(R"({"groups": [[[0,"abc"]]]})");
  CHECK(nonnum.find("/groups/0/0/1") == 0);
  CHECK(nonnum.find("non-numeric") != std::string::npos);
  CHECK(parse_error(R"({"groups": [[[0,true]]]})").find("/groups/0/0/1") == 0);
  CHECK(parse_error(R"({"groups": [[[0]]]})").find("/groups/0/0") == 0);
  CHECK(parse_error(R"([1,2])").find("groups") != std::string::npos);

  std::vector<std::string> warnings;
  Instance d = parse_instance(R"({"groups": [[[0,0],[0,0],["0.0","0"]],[[1,1]]]})", &warnings);
  CHECK(d.group(0).size() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == "group 0: dropped 2 duplicate point(s)");
}

TEST_CASE("print_instance round trip is exact") {
  std::mt19937_64 rng(151);
  for (int it = 0; it < 200; ++it) {
    std::size_t k = 1 + rng() % 4;
    std::vector<std::vector<Point>> groups(k);
    for (auto& g : groups)
      for (std::size_t j = 0, n = 1 + rng() % 4; j < n; ++j) {
        std::int64_t dens[] = {1, 2, 3, 8, 7};
        auto coord = [&] {
          Rational big = Rational(static_cast<std::int64_t>(rng() >> 2)) * Rational(static_cast<std::int64_t>(rng() >> 2));
          Rational small(static_cast<std::int64_t>(rng() % 2001) - 1000, dens[rng() % 5]);
          return rng() % 10 == 0 ? big : small;
        };
        g.push_back({coord(), coord()});
      }
    Instance in(groups);
    std::string text = print_instance(in);
    Instance back = parse_instance(text);
    CHECK(back == in);
    CHECK(print_instance(back) == text);
  }
  CHECK(coord_literal(Rational(3)) == "3");
  CHECK(coord_literal(Rational(1, 2)) == "0.5");
  CHECK(coord_literal(Rational(1, 3)) == "1/3");
}

TEST_CASE("generate_instance is deterministic") {
  Instance a = generate_instance(1, 2, 2, Distribution::kUniform, 100);
  CHECK(a.k() == 2);
  CHECK(a.terminal_count() == 4);
  CHECK(print_instance(a) == print_instance(generate_instance(1, 2, 2, Distribution::kUniform, 100)));
  CHECK(print_instance(a) != print_instance(generate_instance(2, 2, 2, Distribution::kUniform, 100)));
  for (const Point& p : a.all_points()) CHECK(Rect{0, 100, 0, 100}.contains(p));

  Instance singles = generate_instance(3, 5, 1, Distribution::kUniform, 1000);
  for (const auto& g : singles.groups()) CHECK(g.size() == 1);

  Instance clustered = generate_instance(4, 6, 20, Distribution::kClustered, 1000);
  for (const auto& g : clustered.groups()) {
    Rect r = bounding_box(g);
    CHECK(r.xmax - r.xmin <= 250);
    CHECK(r.ymax - r.ymin <= 250);
    for (const Point& p : g) CHECK(Rect{0, 1000, 0, 1000}.contains(p));
  }
}

TEST_CASE("parse_point_list") {
  CHECK(parse_point_list("1,0;-1,0") == std::vector<Point>{P(1, 0), P(-1, 0)});
  CHECK(parse_point_list(" 1/2 , 0.25 ") == std::vector<Point>{{Rational(1, 2), Rational(1, 4)}});
  CHECK_THROWS(parse_point_list("1;2"));
  CHECK_THROWS(parse_point_list("a,b"));
}

TEST_CASE("solve reproduces the tight examples") {
  std::string two_pairs = write_temp("two_pairs.json", kTwoPairs), two_corners = write_temp("two_corners.json", kTwoCorners);

  Run a = run({"solve", "--algo", "bbox-center", "--sub", "exact", two_corners});
  CHECK(a.code == 0);
  CHECK(a.out.find("total:       7 (7)") != std::string::npos);

  Run b = run({"solve", "--algo", "simple", "--sub", "exact", "--connect", "1,0;-1,0", "--json", two_pairs});
  REQUIRE(b.code == 0);
  auto jb = nlohmann::json::parse(b.out);
  CHECK(jb["total_length"]["exact"] == "4");
  CHECK(jb["forced_connection_points"].size() == 2);

  Run c = run({"solve", "--algo", "bbox-center", "--sub", "exact", "--oracle", "--json", two_corners});
  REQUIRE(c.code == 0);
  auto jc = nlohmann::json::parse(c.out);
  CHECK(jc["optimum"]["exact"] == "4");
  CHECK(jc["ratio"]["exact"] == "7/4");

  Run o = run({"oracle", "--json", two_pairs});
  REQUIRE(o.code == 0);
  CHECK(nlohmann::json::parse(o.out)["total_length"]["exact"] == "2");
}

TEST_CASE("solve reports match the library and stay within the oracle bound") {
  std::mt19937_64 rng(157);
  for (int it = 0; it < 25; ++it) {
    std::size_t k = 2 + rng() % 2;
    Instance in = brute::random_instance(rng, k, k + rng() % (9 - k), 20);
    std::string path = write_temp("random.json", print_instance(in));
    Run r = run({"solve", "--algo", "adjusted", "--beta", "7/13", "--sub", "rmst", "--oracle", "--json", path});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    Rational ratio = Rational::parse(j["ratio"]["exact"].get<std::string>());
    CHECK(ratio >= 1);
    CHECK(ratio <= Rational(123, 52));
    TwoLevelTree t = solve_adjusted(in, Rational(7, 13), SteinerSubroutine::rmst());
    CHECK(Rational::parse(j["total_length"]["exact"].get<std::string>()) == t.total_length());
    Coord sum = Rational::parse(j["top_length"]["exact"].get<std::string>());
    for (const auto& s : j["subtree_lengths"]) sum += Rational::parse(s["exact"].get<std::string>());
    CHECK(sum == t.total_length());
  }
}

TEST_CASE("exit codes and error messages") {
  std::string two_pairs = write_temp("two_pairs.json", kTwoPairs);
  Run bad_algo = run({"solve", "--algo", "greedy", two_pairs});
  CHECK(bad_algo.code == 1);
  CHECK(bad_algo.err.find("error: unknown algorithm 'greedy'") == 0);

  Run bad_beta = run({"solve", "--beta", "3/2", two_pairs});
  CHECK(bad_beta.code == 1);
  CHECK(bad_beta.err.find("beta must lie in [0, 1]") != std::string::npos);
  CHECK(run({"solve", "--beta", "-0.1", two_pairs}).code == 1);
  CHECK(run({"solve", "--algo", "simple", "--beta", "1/2", two_pairs}).code == 1);
  CHECK(run({"solve", "--sub", "flute", two_pairs}).code == 1);
  CHECK(run({"solve", (scratch_dir() / "missing.json").string()}).code == 1);
  CHECK(run({"solve", write_temp("empty.json", R"({"groups": [[]]})")}).code == 1);
  CHECK(run({}).code != 0);
  CHECK(run({"solve", "--connect", "0,0", two_pairs}).code == 1);

  std::string big = write_temp("big.json", print_instance(generate_instance(5, 2, 6, Distribution::kUniform, 50)));
  Run over = run({"oracle", big});
  CHECK(over.code == 1);
  CHECK(over.err.find("limit is 9 terminals") != std::string::npos);
  CHECK(run({"solve", "--oracle", big}).code == 1);
  CHECK(run({"solve", big}).code == 0);

  std::string dup = write_temp("dup.json", R"({"groups": [[[0,0],[0,0]],[[1,1]]]})");
  Run warn = run({"solve", dup});
  CHECK(warn.code == 0);
  CHECK(warn.err.find("warning: group 0: dropped 1 duplicate point(s)") == 0);
}

TEST_CASE("gen writes a parseable deterministic instance") {
  Run a = run({"gen", "--seed", "7", "--k", "3", "--per-group", "4", "--dist", "clustered"});
  Run b = run({"gen", "--seed", "7", "--k", "3", "--per-group", "4", "--dist", "clustered"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(parse_instance(a.out).k() == 3);
  std::string path = (scratch_dir() / "gen.json").string();
  CHECK(run({"gen", "--seed", "7", "--k", "3", "--per-group", "4", "--dist", "clustered", "-o", path}).code == 0);
  CHECK(slurp(path) == a.out);
  CHECK(run({"gen", "--dist", "gaussian"}).code == 1);
}

TEST_CASE("svg has one polyline per segment and is well formed") {
  std::mt19937_64 rng(163);
  for (int it = 0; it < 10; ++it) {
    Instance in = brute::random_instance(rng, 1 + rng() % 4, 5 + rng() % 20, 30);
    std::string path = write_temp("svg.json", print_instance(in));
    std::string svg = (scratch_dir() / "out.svg").string();
    REQUIRE(run({"solve", "--svg", svg, path}).code == 0);
    std::string text = slurp(svg);
    TwoLevelTree t = solve_adjusted(in, optimize_beta(Rational(3, 2)).beta, SteinerSubroutine::rmst());
    std::size_t segments = t.top.all_segments().size();
    for (const auto& s : t.subtrees) segments += s.all_segments().size();
    CHECK(count(text, "<polyline") == segments);
    CHECK(count(text, "<circle") == in.terminal_count());
    CHECK(well_formed_xml(text));
    CHECK(text.find("<svg") != std::string::npos);
  }
  std::string two_corners = write_temp("two_corners.json", kTwoCorners), svg = (scratch_dir() / "oracle.svg").string();
  REQUIRE(run({"oracle", "--svg", svg, two_corners}).code == 0);
  CHECK(well_formed_xml(slurp(svg)));
}

TEST_CASE("bench") {
  BenchOptions o;
  o.min_n = 10;
  o.max_n = 10;
  BenchResult r = run_bench(o);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].n == 10);
  CHECK(r.rows[0].seconds > 0);

  o.min_n = 100;
  o.max_n = 1000;
  o.points_per_group = 10;
  r = run_bench(o);
  REQUIRE(r.rows.size() == 5);
  CHECK(r.rows.back().n == 1000);
  for (const BenchRow& row : r.rows) CHECK(row.k == row.n / 10);

  BenchOptions exact;
  exact.sub = SteinerSubroutine::exact();
  exact.min_n = 10;
  exact.max_n = 10;
  CHECK_THROWS_AS(run_bench(exact), std::length_error);
  Run refused = run({"bench", "--sub", "exact", "--min", "10", "--max", "10"});
  CHECK(refused.code == 1);
  CHECK(refused.err.find("exact subroutine limit is 9") != std::string::npos);

  Run ok = run({"bench", "--min", "10", "--max", "40", "--json"});
  REQUIRE(ok.code == 0);
  auto j = nlohmann::json::parse(ok.out);
  CHECK(j["rows"].size() == 3);

  std::vector<BenchRow> linear{{1000, 1, 1.0, Coord(0)}, {2000, 1, 2.0, Coord(0)}, {4000, 1, 4.0, Coord(0)}};
  CHECK(fit_exponent(linear) == doctest::Approx(1.0));
  std::vector<BenchRow> quad{{10, 1, 1.0, Coord(0)}, {100, 1, 100.0, Coord(0)}};
  CHECK(fit_exponent(quad) == doctest::Approx(2.0));
}

TEST_CASE("optimality_ratio") {
  CHECK(optimality_ratio(Rational(7), Rational(4)) == Rational(7, 4));
  CHECK(optimality_ratio(Rational(0), Rational(0)) == 1);
  CHECK_THROWS(optimality_ratio(Rational(1), Rational(0)));
}
