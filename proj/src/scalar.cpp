#include "umwelt/scalar.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace umwelt {

namespace {

double as_double(const std::variant<mpq_class, double>& v) {
  if (const auto* q = std::get_if<mpq_class>(&v)) return q->get_d();
  return std::get<double>(v);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Exact reading of [+-]digits[.digits][e[+-]digits].
mpq_class parse_decimal_exact(const std::string& text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      exp_negative = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw std::invalid_argument("bad exponent in '" + text + "'");
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  auto dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw std::invalid_argument("not a number: '" + text + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw std::invalid_argument("not a number: '" + text + "'");
  digits.append(int_part);
  digits.append(frac_part);
  exponent -= static_cast<long>(frac_part.size());

  mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class q = exponent >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

const mpq_class& Scalar::rational() const {
  if (!is_rational()) throw std::logic_error("Scalar holds a double, not a rational");
  return std::get<mpq_class>(value_);
}

double Scalar::to_double() const { return as_double(value_); }

bool Scalar::is_exact_zero() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  return std::get<double>(value_) == 0.0;
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  return std::string(buf, end);
}

#define UMWELT_SCALAR_OP(op)                                                   \
  Scalar& Scalar::operator op##=(const Scalar& o) {                            \
    if (is_rational() && o.is_rational()) {                                    \
      std::get<mpq_class>(value_) op## = std::get<mpq_class>(o.value_);        \
    } else {                                                                   \
      value_ = as_double(value_) op as_double(o.value_);                       \
    }                                                                          \
    return *this;                                                              \
  }

UMWELT_SCALAR_OP(+)
UMWELT_SCALAR_OP(-)
UMWELT_SCALAR_OP(*)

#undef UMWELT_SCALAR_OP

Scalar& Scalar::operator/=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    if (sgn(std::get<mpq_class>(o.value_)) == 0) throw std::domain_error("division by zero");
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
  } else {
    value_ = as_double(value_) / as_double(o.value_);
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational())
    return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
  return as_double(a.value_) == as_double(b.value_);
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) {
    int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return as_double(a.value_) <=> as_double(b.value_);
}

Scalar abs(const Scalar& s) {
  if (const auto* q = std::get_if<mpq_class>(&s.value_)) return Scalar(mpq_class(::abs(*q)));
  return Scalar(std::fabs(std::get<double>(s.value_)));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

bool Arithmetic::equal(const Scalar& a, const Scalar& b) const {
  if (is_exact()) return a == b;
  return std::fabs(a.to_double() - b.to_double()) <= epsilon;
}

bool Arithmetic::is_zero(const Scalar& a) const {
  if (is_exact()) return a.is_exact_zero();
  return std::fabs(a.to_double()) <= epsilon;
}

Scalar Arithmetic::zero() const { return is_exact() ? Scalar() : Scalar(0.0); }
Scalar Arithmetic::one() const { return is_exact() ? Scalar::ratio(1) : Scalar(1.0); }

Scalar Arithmetic::ratio(long num, long den) const {
  if (is_exact()) return Scalar::ratio(num, den);
  return Scalar(static_cast<double>(num) / static_cast<double>(den));
}

Scalar Arithmetic::coerce(const Scalar& s) const {
  if (is_exact()) return s.is_rational() ? s : Scalar(mpq_class(s.to_double()));
  return s.is_rational() ? Scalar(s.to_double()) : s;
}

bool Arithmetic::conforms(const Scalar& s) const { return s.is_rational() == is_exact(); }

Scalar Arithmetic::parse(std::string_view raw) const {
  std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty numeric literal");
  mpq_class q;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    mpq_class num = parse_decimal_exact(trim(std::string_view(text).substr(0, slash)));
    mpq_class den = parse_decimal_exact(trim(std::string_view(text).substr(slash + 1)));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    q = num / den;
  } else {
    q = parse_decimal_exact(text);
  }
  q.canonicalize();
  if (is_exact()) return Scalar(std::move(q));
  // Decimal literals go through strtod so that "0.1" is the nearest double.
  if (text.find('/') == std::string::npos) return Scalar(std::stod(text));
  return Scalar(q.get_d());
}

}  // namespace umwelt
