#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace umwelt {

/// A probability value: either an exact rational or a double.
///
/// Arithmetic between two rationals stays exact. Mixing a rational with a
/// double promotes the result to double, so float-mode computations may start
/// from the default (rational zero) accumulator.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  explicit Scalar(mpq_class q);
  explicit Scalar(double d) : value_(d) {}

  static Scalar ratio(long num, long den = 1);

  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& rational() const;
  double to_double() const;
  bool is_exact_zero() const;

  /// "1/2", "3", "0" for rationals; shortest round-trip decimal for doubles.
  std::string to_string() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  /// Exact comparison (numeric, across modes via double).
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);

  friend Scalar abs(const Scalar& s);

 private:
  std::variant<mpq_class, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

enum class ArithmeticMode { rational, floating };

/// The model-wide arithmetic contract: exact rationals, or doubles compared
/// with an absolute tolerance.
struct Arithmetic {
  ArithmeticMode mode = ArithmeticMode::rational;
  double epsilon = 0.0;

  static Arithmetic exact() { return {}; }
  static Arithmetic floating(double eps) { return {ArithmeticMode::floating, eps}; }

  bool is_exact() const { return mode == ArithmeticMode::rational; }

  bool equal(const Scalar& a, const Scalar& b) const;
  bool is_zero(const Scalar& a) const;

  Scalar zero() const;
  Scalar one() const;
  Scalar ratio(long num, long den = 1) const;
  /// Converts into this mode (rational -> double in float mode; double ->
  /// exact binary rational in rational mode).
  Scalar coerce(const Scalar& s) const;
  bool conforms(const Scalar& s) const;

  /// Parses "p/q", integers and decimals ("0.25", "1e-3"). Decimals are
  /// read exactly in rational mode. Throws std::invalid_argument.
  Scalar parse(std::string_view text) const;

  friend bool operator==(const Arithmetic&, const Arithmetic&) = default;
};

}  // namespace umwelt
