#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace iet {

/// Exact element of Q or of a real quadratic field Q(sqrt(d)).
///
/// The value is a + b*sqrt(d). Rationals have d == 0 and b == 0; a quadratic
/// value always has b != 0 and square-free d >= 2, so every value has exactly
/// one representation. Rationals coerce into any quadratic field; combining
/// two irrational values over different radicands throws kFieldMismatch.
///
/// Each value caches a double approximation with a rigorous error bound.
/// Ordering consults it first and falls back to the exact sign computation
/// whenever the bound cannot separate the operands, so comparisons are always
/// exact.
class Scalar {
 public:
  Scalar() { refresh(); }
  Scalar(long v) : a_(v) { refresh(); }  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class q);
  Scalar(mpq_class a, mpq_class b, std::uint64_t d);

  static Scalar from_fraction(long num, long den);

  /// Grammar (whitespace ignored): a sum of at most one rational term and any
  /// number of sqrt terms over the same radicand, where a rational is INT,
  /// INT/INT or a decimal literal and a sqrt term is [RAT*]sqrt(INT).
  static Scalar parse(std::string_view text);

  /// Canonical text: "3/5", "-2", "1/2-1/10*sqrt(5)", "1*sqrt(5)".
  std::string render() const;

  bool is_rational() const { return d_ == 0; }
  const mpq_class& rational_part() const { return a_; }
  const mpq_class& sqrt_coefficient() const { return b_; }
  std::uint64_t radicand() const { return d_; }

  /// Nearest double; for reporting only.
  double to_double() const;
  /// Cached approximation used by the comparison filter.
  double approx() const { return approx_; }

  int sign() const;
  bool is_zero() const { return d_ == 0 && sgn(a_) == 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y);
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

 private:
  void normalize();
  void refresh();
  static std::uint64_t common_radicand(const Scalar& x, const Scalar& y);

  mpq_class a_;
  mpq_class b_;
  std::uint64_t d_ = 0;
  double approx_ = 0.0;
  double err_ = 0.0;
};

Scalar abs(const Scalar& x);
const Scalar& min(const Scalar& x, const Scalar& y);
const Scalar& max(const Scalar& x, const Scalar& y);

/// Splits n = k^2 * m with m square-free. Throws kParse when n exceeds the
/// supported radicand range (trial division bound).
std::pair<mpz_class, std::uint64_t> extract_square(std::uint64_t n);

}  // namespace iet
