#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "fanosplit/error.hpp"

namespace fanosplit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class FieldElement;

/// Exact coefficient field: a prime field GF(p) with p < 2^31, or the rationals.
class Field {
 public:
  enum class Kind : std::uint8_t { prime, rationals };

  static constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31);

  static Field prime(std::uint64_t p) {
    if (p < 2 || p > kMaxPrime || !is_prime(p)) {
      throw InvalidField("GF(p) requires a prime p <= 2^31, got " + std::to_string(p));
    }
    return Field(Kind::prime, static_cast<std::uint32_t>(p));
  }

  static Field rationals() { return Field(Kind::rationals, 0); }

  /// Parses the wire token: "q=5" or "rational". A bare integer is read as a prime.
  static Field parse(std::string_view token) {
    if (token == "rational" || token == "rationals" || token == "Q") return rationals();
    std::string_view digits = token;
    if (digits.starts_with("q=")) digits.remove_prefix(2);
    if (digits.empty()) throw ParseError("empty field token");
    std::uint64_t p = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw ParseError("bad field token '" + std::string(token) + "'");
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
      if (p > kMaxPrime) throw InvalidField("prime too large in field token");
    }
    return prime(p);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_prime_field() const noexcept { return kind_ == Kind::prime; }
  bool is_rationals() const noexcept { return kind_ == Kind::rationals; }
  /// Characteristic; 0 for the rationals.
  std::uint32_t characteristic() const noexcept { return p_; }

  std::string token() const { return is_rationals() ? "rational" : "q=" + std::to_string(p_); }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_rational(const Rational& v) const;
  /// Element with residue `r` (prime fields only); r is reduced mod p.
  FieldElement residue(std::uint64_t r) const;
  FieldElement parse_element(std::string_view text) const;

  friend bool operator==(const Field&, const Field&) = default;

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t f = 3; f * f <= n; f += 2) {
      if (n % f == 0) return false;
    }
    return true;
  }

 private:
  Field(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint32_t p_;
};

/// Element of a Field in canonical form: a residue in [0,p) or a reduced fraction with
/// positive denominator. Equality is representational.
class FieldElement {
 public:
  FieldElement() : field_(Field::rationals()), value_(Rational(0)) {}

  const Field& field() const noexcept { return field_; }

  bool is_zero() const {
    if (auto r = std::get_if<std::uint32_t>(&value_)) return *r == 0;
    return std::get<Rational>(value_) == 0;
  }
  bool is_one() const {
    if (auto r = std::get_if<std::uint32_t>(&value_)) return *r == 1;
    return std::get<Rational>(value_) == 1;
  }

  /// Residue for GF(p) elements.
  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }

  FieldElement operator+(const FieldElement& o) const {
    check(o);
    if (field_.is_prime_field()) {
      std::uint64_t s = std::uint64_t{residue()} + o.residue();
      if (s >= field_.characteristic()) s -= field_.characteristic();
      return FieldElement(field_, static_cast<std::uint32_t>(s));
    }
    return FieldElement(field_, Rational(rational() + o.rational()));
  }

  FieldElement operator-(const FieldElement& o) const {
    check(o);
    if (field_.is_prime_field()) {
      const std::uint64_t p = field_.characteristic();
      std::uint64_t s = std::uint64_t{residue()} + p - o.residue();
      if (s >= p) s -= p;
      return FieldElement(field_, static_cast<std::uint32_t>(s));
    }
    return FieldElement(field_, Rational(rational() - o.rational()));
  }

  FieldElement operator-() const {
    if (field_.is_prime_field()) {
      const std::uint32_t r = residue();
      return FieldElement(field_, r == 0 ? 0u : field_.characteristic() - r);
    }
    return FieldElement(field_, Rational(-rational()));
  }

  FieldElement operator*(const FieldElement& o) const {
    check(o);
    if (field_.is_prime_field()) {
      return FieldElement(field_, static_cast<std::uint32_t>(std::uint64_t{residue()} * o.residue() %
                                                             field_.characteristic()));
    }
    return FieldElement(field_, Rational(rational() * o.rational()));
  }

  FieldElement inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (field_.is_prime_field()) {
      // Fermat: a^(p-2).
      return pow(field_.characteristic() - 2);
    }
    return FieldElement(field_, Rational(1 / rational()));
  }

  FieldElement operator/(const FieldElement& o) const {
    check(o);
    return *this * o.inv();
  }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement pow(std::uint64_t e) const {
    FieldElement result = field_.one();
    FieldElement base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  /// Decimal residue for GF(p); "num/den" (den omitted when 1) for rationals.
  std::string to_string() const {
    if (field_.is_prime_field()) return std::to_string(residue());
    const Rational& q = rational();
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  /// Total order used for canonical sorting: residues numerically, rationals by value.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    if (a.field_.is_prime_field()) return a.residue() <=> b.residue();
    if (a.rational() < b.rational()) return std::strong_ordering::less;
    if (b.rational() < a.rational()) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  friend class Field;

  FieldElement(Field f, std::uint32_t r) : field_(f), value_(r) {}
  FieldElement(Field f, Rational q) : field_(f), value_(std::move(q)) {}

  void check(const FieldElement& o) const {
    if (!(field_ == o.field_)) {
      throw ContextMismatch("field mismatch: " + field_.token() + " vs " + o.field_.token());
    }
  }

  Field field_;
  std::variant<std::uint32_t, Rational> value_;
};

inline FieldElement Field::zero() const { return from_int(0); }
inline FieldElement Field::one() const { return from_int(1); }

inline FieldElement Field::from_int(std::int64_t v) const {
  if (is_prime_field()) {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return FieldElement(*this, static_cast<std::uint32_t>(r));
  }
  return FieldElement(*this, Rational(v));
}

inline FieldElement Field::residue(std::uint64_t r) const {
  if (!is_prime_field()) return from_int(static_cast<std::int64_t>(r));
  return FieldElement(*this, static_cast<std::uint32_t>(r % p_));
}

inline FieldElement Field::from_rational(const Rational& v) const {
  if (is_rationals()) return FieldElement(*this, v);
  Integer num = boost::multiprecision::numerator(v) % p_;
  if (num < 0) num += p_;
  Integer den = boost::multiprecision::denominator(v) % p_;
  if (den == 0) throw DivisionByZero("denominator vanishes in GF(" + std::to_string(p_) + ")");
  return residue(num.convert_to<std::uint64_t>()) / residue(den.convert_to<std::uint64_t>());
}

inline FieldElement Field::parse_element(std::string_view text) const {
  auto parse_int = [&](std::string_view s) -> Integer {
    if (s.empty()) throw ParseError("empty number in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("bad number '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw ParseError("bad number '" + std::string(text) + "'");
    }
    Integer v(std::string(s.substr(i)));
    return s[0] == '-' ? Integer(-v) : v;
  };
  const auto slash = text.find('/');
  const Integer num = parse_int(text.substr(0, slash));
  Integer den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(text.substr(slash + 1));
    if (den == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  }
  if (den < 0) return from_rational(Rational(Integer(-num), Integer(-den)));
  return from_rational(Rational(num, den));
}

}  // namespace fanosplit
