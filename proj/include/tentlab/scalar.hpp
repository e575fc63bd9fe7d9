#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <variant>

#include "tentlab/error.hpp"

namespace tentlab {

enum class BackendKind { binary64, rational, decimal };

/// Arithmetic model a Scalar lives in. `precision_digits` is only meaningful
/// for the decimal kind and is zero otherwise.
struct BackendSpec {
  BackendKind kind = BackendKind::binary64;
  int precision_digits = 0;

  static constexpr int min_decimal_digits = 10;

  static BackendSpec binary64() { return {}; }
  static BackendSpec rational() { return {BackendKind::rational, 0}; }
  static BackendSpec decimal(int digits);

  friend bool operator==(const BackendSpec&, const BackendSpec&) = default;
};

/// "binary64", "rational" or "decimal:<digits>".
std::string to_string(const BackendSpec& spec);
/// Accepts the names above; a bare "decimal" takes `default_digits`.
BackendSpec parse_backend(std::string_view name, int default_digits = 50);

/// Fixed-precision decimal floating point: value = coefficient * 10^exponent
/// with at most `precision` significant digits. Every constructor and
/// arithmetic result is rounded half-even to that precision.
class Decimal {
 public:
  Decimal(mpz_class coefficient, long exponent, int precision);

  static Decimal from_rational(const mpq_class& q, int precision);
  static Decimal from_double(double x, int precision);

  int precision() const noexcept { return precision_; }
  const mpz_class& coefficient() const noexcept { return coeff_; }
  long exponent() const noexcept { return exp_; }
  int sign() const noexcept { return sgn(coeff_); }

  mpq_class to_rational() const;
  /// Fixed-point rendering with exactly `fractional_digits` digits after the
  /// point, rounded half-even when the value carries more.
  std::string to_fixed(int fractional_digits) const;

  friend Decimal operator+(const Decimal& a, const Decimal& b);
  friend Decimal operator-(const Decimal& a, const Decimal& b);
  friend Decimal operator*(const Decimal& a, const Decimal& b);
  friend Decimal operator/(const Decimal& a, const Decimal& b);
  friend Decimal operator-(const Decimal& a);

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) { return (a <=> b) == 0; }

 private:
  void round_to_precision();

  mpz_class coeff_;
  long exp_ = 0;
  int precision_ = 0;
};

enum class Branch { left, right };

/// A number under one of the three backends. Values are immutable; all
/// arithmetic requires both operands to share a backend.
class Scalar {
 public:
  using Value = std::variant<double, mpq_class, Decimal>;

  Scalar() : v_(0.0) {}
  explicit Scalar(double x);
  explicit Scalar(mpq_class q);
  explicit Scalar(Decimal d) : v_(std::move(d)) {}

  static Scalar from_int(long n, const BackendSpec& backend);
  /// p/q rounded into `backend` (exact for rational).
  static Scalar from_ratio(long p, long q, const BackendSpec& backend);
  static Scalar from_rational(const mpq_class& q, const BackendSpec& backend);

  BackendSpec backend() const;
  const Value& value() const noexcept { return v_; }

  double to_double() const;
  /// Exact value; every backend holds a rational number.
  mpq_class to_rational() const;
  /// Re-rounds the exact value into another backend.
  Scalar convert(const BackendSpec& backend) const;
  /// binary64: shortest round-trip; rational: "p/q"; decimal: fixed point
  /// with precision_digits fractional digits.
  std::string to_string() const;

  bool is_zero() const;
  Scalar abs() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);

  /// Exact comparison, valid across backends.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return (a <=> b) == 0; }

 private:
  Value v_;
};

Scalar parse_scalar(std::string_view text, const BackendSpec& backend);

/// a*x + b in the common backend of the three arguments.
Scalar affine(const Scalar& a, const Scalar& x, const Scalar& b);

/// Which tent branch x falls on; x = 1/2 is on the (closed) left branch.
Branch cmp_half(const Scalar& x);

/// |a - b| as a double, computed exactly before the final rounding.
double distance(const Scalar& a, const Scalar& b);

/// Correctly rounded (nearest, ties to even) conversion of a rational.
double nearest_double(const mpq_class& q);

/// floor(sqrt(n)) for n >= 0.
mpz_class isqrt(const mpz_class& n);

}  // namespace tentlab
