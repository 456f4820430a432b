#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tlsteiner {

/// Exact rational number in canonical form (reduced, positive denominator).
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// anything larger is promoted to a GMP rational and demoted again as soon
/// as a result fits. Arithmetic never rounds.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(int value) : num_(value) {}           // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  /// Parses "n", "p/q", or a decimal literal such as "-1.25" or "3e-2".
  static Rational parse(std::string_view text);

  bool is_small() const { return !big_; }
  bool is_integer() const;
  int sign() const;

  /// Numerator and denominator as decimal strings.
  std::string numerator_string() const;
  std::string denominator_string() const;

  mpq_class to_mpq() const;
  double to_double() const;

  /// "n" for integers, "p/q" otherwise.
  std::string to_string() const;
  /// Finite decimal expansion when one exists (denominator 2^a 5^b).
  std::optional<std::string> to_decimal_string() const;
  /// Decimal rendering at the given number of significant digits.
  std::string to_significant(int digits = 6) const;

  Rational operator-() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

  std::size_t hash() const;

 private:
  static Rational from_i128(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.abs(); }

/// Coordinates and lengths are exact rationals.
using Coord = Rational;

}  // namespace tlsteiner

template <>
struct std::hash<tlsteiner::Rational> {
  std::size_t operator()(const tlsteiner::Rational& r) const noexcept { return r.hash(); }
};
