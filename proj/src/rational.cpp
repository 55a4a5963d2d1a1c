#include "ghforge/rational.hpp"

#include <cctype>
#include <ostream>

#include "ghforge/error.hpp"

namespace ghforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::LabelError: return "LabelError";
    case ErrorKind::IndexError: return "IndexError";
    case ErrorKind::NonpositiveFactor: return "NonpositiveFactor";
    case ErrorKind::NonpositiveR: return "NonpositiveR";
    case ErrorKind::NonpositiveOffset: return "NonpositiveOffset";
    case ErrorKind::InvalidCorrespondence: return "InvalidCorrespondence";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::DiameterExceeded: return "DiameterExceeded";
    case ErrorKind::ParamMismatch: return "ParamMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RangeExceeded: return "RangeExceeded";
    case ErrorKind::DistortionTooLarge: return "DistortionTooLarge";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Asymmetry: return "asymmetry";
    case Axiom::NonzeroDiagonal: return "nonzero-diagonal";
    case Axiom::Negative: return "negative";
    case Axiom::Triangle: return "triangle";
    case Axiom::ZeroOffDiagonal: return "zero-off-diagonal";
  }
  return "unknown";
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  value_ = mpq_class(mpz_class(numerator), mpz_class(denominator));
  value_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::optional<mpz_class> parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) return std::nullopt;
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

// [-]digits[.digits][e[+-]digits]
std::optional<mpq_class> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_part = parse_integer(s.substr(e + 1));
    if (!exp_part || !exp_part->fits_slong_p()) return std::nullopt;
    exponent = exp_part->get_si();
    if (exponent > 4096 || exponent < -4096) return std::nullopt;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      return std::nullopt;
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) return std::nullopt;
    digits = std::string(s);
  }
  if (digits.empty()) return std::nullopt;
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent < 0 ? mpq_class(mantissa, scale) : mpq_class(mantissa * scale);
  q.canonicalize();
  return q;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(text.substr(0, slash));
    auto den = parse_integer(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(mpq_class(*num, *den));
  }
  if (auto q = parse_decimal(text)) return Rational(std::move(*q));
  return std::nullopt;
}

Rational Rational::from_string(std::string_view text) {
  auto r = parse(text);
  if (!r) throw ParseError("not an exact rational: \"" + std::string(text) + "\"");
  return *r;
}

std::string Rational::str() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) throw Error(ErrorKind::NonpositiveFactor, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

Rational ceil(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.raw().get_num_mpz_t(), value.raw().get_den_mpz_t());
  return Rational(mpq_class(q));
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace ghforge
