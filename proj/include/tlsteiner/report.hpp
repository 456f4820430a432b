#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlsteiner/model.hpp"
#include "tlsteiner/rsmt.hpp"

namespace tlsteiner {

struct RunReport {
  std::string algorithm;
  std::string subroutine;
  std::optional<Rational> beta;
  std::vector<Point> forced_connection_points;

  std::vector<Point> connection_points;
  Coord top_length;
  std::vector<Coord> subtree_lengths;
  Coord total_length;

  std::optional<Coord> optimum;
  std::optional<Rational> ratio;
  double wall_ms = 0;
};

/// Fills the length fields from the embeddings of `t`.
void record_lengths(RunReport& report, const TwoLevelTree& t);

/// total / optimum; 1 when both are zero.
Rational optimality_ratio(const Coord& total, const Coord& optimum);

std::string report_text(const RunReport& report);
std::string report_json(const RunReport& report);

/// SVG drawing: one <polyline> per embedded segment, subtrees coloured by
/// group, the top-level tree in black, terminals as dots and connection
/// points as squares.
std::string render_svg(const Instance& instance, const TwoLevelTree& t);

struct BenchOptions {
  SteinerSubroutine sub = SteinerSubroutine::rmst();
  std::size_t min_n = 1000;
  std::size_t max_n = 100000;
  std::size_t points_per_group = 100;
  std::uint64_t seed = 1;
  std::int64_t extent = 1000000;
};

struct BenchRow {
  std::size_t n;
  std::size_t k;
  double seconds;
  Coord length;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  /// Least-squares slope of log(time) against log(n).
  double exponent = 0;
};

/// Times the adjusted solver (beta from optimize_beta) on uniform instances
/// over the doubling ladder min_n, 2 min_n, ... capped by max_n. Throws
/// std::length_error if the exact subroutine would exceed its size limit.
BenchResult run_bench(const BenchOptions& options);

double fit_exponent(const std::vector<BenchRow>& rows);

}  // namespace tlsteiner
