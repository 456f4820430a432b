#include "tlsteiner/io.hpp"

#include <random>
#include <set>

#include <json.hpp>

namespace tlsteiner {
namespace {

using json = nlohmann::json;

Coord read_coord(const json& v, const std::string& where) {
  try {
    if (v.is_number_integer() || v.is_number_unsigned() || v.is_number_float()) return Rational::parse(v.dump());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw InstanceError(where + ": non-numeric coordinate " + v.dump());
  }
  throw InstanceError(where + ": non-numeric coordinate " + v.dump());
}

}  // namespace

Instance parse_instance(std::string_view text, std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("groups")) throw InstanceError("/: expected an object with \"groups\"");
  const json& groups = doc["groups"];
  if (!groups.is_array()) throw InstanceError("/groups: expected an array");
  if (groups.empty()) throw InstanceError("no groups");

  std::vector<std::vector<Point>> parsed;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string gpath = "/groups/" + std::to_string(i);
    const json& g = groups[i];
    if (!g.is_array()) throw InstanceError(gpath + ": expected an array of points");
    if (g.empty()) throw InstanceError(gpath + ": empty group");
    std::vector<Point> pts;
    std::set<Point> seen;
    std::size_t dups = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const std::string ppath = gpath + "/" + std::to_string(j);
      const json& p = g[j];
      if (!p.is_array() || p.size() != 2) throw InstanceError(ppath + ": expected [x, y]");
      Point pt{read_coord(p[0], ppath + "/0"), read_coord(p[1], ppath + "/1")};
      if (!seen.insert(pt).second) {
        ++dups;
        continue;
      }
      pts.push_back(pt);
    }
    if (dups > 0 && warnings)
      warnings->push_back("group " + std::to_string(i) + ": dropped " + std::to_string(dups) + " duplicate point(s)");
    parsed.push_back(std::move(pts));
  }
  return Instance(std::move(parsed));
}

std::string coord_literal(const Coord& c) {
  if (c.is_integer()) return c.to_string();
  if (auto d = c.to_decimal_string()) return *d;
  return c.to_string();
}

std::string print_instance(const Instance& instance) {
  std::string out = "{\"groups\": [";
  for (std::size_t i = 0; i < instance.k(); ++i) {
    if (i) out += ", ";
    out += "[";
    const auto& g = instance.group(i);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (j) out += ", ";
      out += "[";
      for (const Coord* c : {&g[j].x, &g[j].y}) {
        if (c == &g[j].y) out += ", ";
        // Integers stay JSON numbers only while they fit a JSON int64.
        if (c->is_integer() && c->is_small())
          out += c->to_string();
        else
          out += "\"" + coord_literal(*c) + "\"";
      }
      out += "]";
    }
    out += "]";
  }
  out += "]}\n";
  return out;
}

Instance generate_instance(std::uint64_t seed, std::size_t k, std::size_t points_per_group,
                           Distribution distribution, std::int64_t extent) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (points_per_group == 0) throw std::invalid_argument("points per group must be at least 1");
  if (extent < 0) throw std::invalid_argument("extent must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Point>> groups(k);
  for (auto& g : groups) {
    std::int64_t x0 = 0, y0 = 0, side = extent;
    if (distribution == Distribution::kClustered) {
      side = extent / 4;
      std::uniform_int_distribution<std::int64_t> origin(0, extent - side);
      x0 = origin(rng);
      y0 = origin(rng);
    }
    std::uniform_int_distribution<std::int64_t> coord(0, side);
    std::set<Point> seen;
    for (std::size_t j = 0; j < points_per_group; ++j) {
      // Redraw a few times on collisions; tiny windows may still repeat.
      for (int attempt = 0; attempt < 32; ++attempt) {
        Point p{x0 + coord(rng), y0 + coord(rng)};
        if (seen.insert(p).second || attempt == 31) {
          g.push_back(p);
          break;
        }
      }
    }
  }
  return Instance(std::move(groups));
}

std::vector<Point> parse_point_list(std::string_view text) {
  std::vector<Point> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    if (item.find_first_not_of(" \t") != std::string_view::npos) {
      std::size_t comma = item.find(',');
      if (comma == std::string_view::npos) throw std::invalid_argument("expected x,y in \"" + std::string(item) + "\"");
      out.push_back({Rational::parse(item.substr(0, comma)), Rational::parse(item.substr(comma + 1))});
    }
    start = end + 1;
  }
  return out;
}

}  // namespace tlsteiner
