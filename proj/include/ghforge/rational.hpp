#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace ghforge {

/// Exact arbitrary-precision rational, always in lowest terms with a positive
/// denominator. All distances, distortions and radii in the library are
/// Rationals; nothing is ever rounded.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses "p", "p/q", or a decimal literal such as "-1.25" or "3e-2".
  /// Returns nullopt on malformed text or a zero denominator.
  static std::optional<Rational> parse(std::string_view text);

  /// Same as parse() but throws ParseError.
  static Rational from_string(std::string_view text);

  /// Canonical form: "p" when the denominator is 1, otherwise "p/q".
  std::string str() const;

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  const mpq_class& raw() const noexcept { return value_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

/// Distances and every derived real quantity.
using Scalar = Rational;

Rational abs(const Rational& value);

/// Smallest integer >= value.
Rational ceil(const Rational& value);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace ghforge
