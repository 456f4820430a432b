#include "tlsteiner/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

namespace tlsteiner {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

bool fits64(i128 v) { return v >= kMin64 && v <= kMax64; }

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 magnitude(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

mpz_class to_mpz(i128 v) {
  u128 mag = magnitude(v);
  mpz_class hi(static_cast<unsigned long>(mag >> 64));
  mpz_class lo(static_cast<unsigned long>(mag & ~std::uint64_t{0}));
  mpz_class out = (hi << 64) + lo;
  return v < 0 ? mpz_class(-out) : out;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_i128(num, den);
}

Rational::Rational(const mpq_class& value) {
  mpq_class v(value);
  v.canonicalize();
  if (v.get_num().fits_slong_p() && v.get_den().fits_slong_p()) {
    num_ = v.get_num().get_si();
    den_ = v.get_den().get_si();
  } else {
    big_ = std::make_shared<const mpq_class>(std::move(v));
  }
}

Rational Rational::from_i128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd_u128(magnitude(num), u128(den));
  if (g > 1) {
    num /= i128(g);
    den /= i128(g);
  }
  Rational r;
  if (fits64(num) && fits64(den)) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  return Rational(mpq_class(to_mpz(num), to_mpz(den)));
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad_literal(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view p = trim(s.substr(0, slash));
    std::string_view q = trim(s.substr(slash + 1));
    bool neg = false;
    if (!p.empty() && (p.front() == '-' || p.front() == '+')) {
      neg = p.front() == '-';
      p.remove_prefix(1);
    }
    if (!all_digits(p) || !all_digits(q)) bad_literal(text);
    mpz_class den(std::string(q), 10);
    if (den == 0) throw std::domain_error("rational with zero denominator");
    mpz_class num(std::string(p), 10);
    if (neg) num = -num;
    return Rational(mpq_class(num, den));
  }

  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp = s.substr(e + 1);
    bool exp_neg = false;
    if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) {
      exp_neg = exp.front() == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 6) bad_literal(text);
    exponent = std::stol(std::string(exp));
    if (exp_neg) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad_literal(text);
  if (!int_part.empty() && !all_digits(int_part)) bad_literal(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad_literal(text);

  mpz_class digits(std::string(int_part) + std::string(frac_part) + (int_part.empty() && frac_part.empty() ? "0" : ""), 10);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  mpq_class v;
  if (scale >= 0) {
    v = mpq_class(digits, pow10(static_cast<unsigned long>(scale)));
  } else {
    v = mpq_class(digits * pow10(static_cast<unsigned long>(-scale)));
  }
  if (neg) v = -v;
  return Rational(v);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

std::string Rational::numerator_string() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_string() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

std::optional<std::string> Rational::to_decimal_string() const {
  if (is_integer()) return numerator_string();
  mpq_class v = to_mpq();
  mpz_class den = v.get_den();
  unsigned long twos = mpz_scan1(den.get_mpz_t(), 0);
  mpz_class rest = den >> twos;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return std::nullopt;
  unsigned long scale = std::max(twos, fives);
  mpz_class scaled = v.get_num() * (pow10(scale) / den);
  bool neg = scaled < 0;
  std::string digits = mpz_class(::abs(scaled)).get_str();
  if (digits.size() <= scale) digits.insert(0, scale - digits.size() + 1, '0');
  digits.insert(digits.size() - scale, ".");
  return (neg ? "-" : "") + digits;
}

std::string Rational::to_significant(int digits) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, to_double());
  return buf;
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  if (num_ == std::numeric_limits<std::int64_t>::min()) return from_i128(-i128(num_), den_);
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t s;
    if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
    return Rational::from_i128(i128(a.num_) + b.num_, 1);
  }
  if (a.den_ == b.den_) return Rational::from_i128(i128(a.num_) + b.num_, a.den_);
  return Rational::from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t s;
    if (!__builtin_sub_overflow(a.num_, b.num_, &s)) return Rational(s);
    return Rational::from_i128(i128(a.num_) - b.num_, 1);
  }
  if (a.den_ == b.den_) return Rational::from_i128(i128(a.num_) - b.num_, a.den_);
  return Rational::from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t p;
    if (!__builtin_mul_overflow(a.num_, b.num_, &p)) return Rational(p);
  }
  return Rational::from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.sign() == 0) throw std::domain_error("rational division by zero");
  if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
  return Rational::from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

bool operator==(const Rational& a, const Rational& b) {
  // Canonical form makes representations unique.
  if (a.big_ || b.big_) return a.big_ && b.big_ && *a.big_ == *b.big_;
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) {
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  i128 lhs = i128(a.num_) * b.den_;
  i128 rhs = i128(b.num_) * a.den_;
  return lhs < rhs ? std::strong_ordering::less
                   : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(to_string());
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace tlsteiner
