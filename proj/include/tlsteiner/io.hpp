#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlsteiner/model.hpp"

namespace tlsteiner {

/// Malformed instance document. The message carries the line/column or the
/// JSON pointer of the offending value.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses {"groups": [[[x, y], ...], ...]}. Coordinates may be JSON integers,
/// JSON decimals, or strings holding "n", "p/q" or a decimal literal; all are
/// read exactly. Duplicates inside a group are dropped with a warning.
Instance parse_instance(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Canonical document: integers as JSON numbers, other values as strings
/// (finite decimals when possible, else "p/q"). parse_instance(print) == input.
std::string print_instance(const Instance& instance);

/// Coordinate literal as written by print_instance.
std::string coord_literal(const Coord& c);

enum class Distribution { kUniform, kClustered };

/// Integer coordinates in [0, extent]. Clustered mode draws each group from
/// its own random window of side extent / 4. Deterministic for a fixed seed.
Instance generate_instance(std::uint64_t seed, std::size_t k, std::size_t points_per_group,
                           Distribution distribution, std::int64_t extent);

/// Parses "x,y;x,y;..." into points.
std::vector<Point> parse_point_list(std::string_view text);

}  // namespace tlsteiner
