#pragma once

#include "kolmo/rational.hpp"

#include <mpfr.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace kolmo {

enum class Round { Nearest, Down, Up };

/// Binary floating point at a configurable precision (MPFR), with directed
/// rounding so that interval bounds stay rigorous.
///
/// The process-wide default precision is 256 bits unless the environment
/// variable KOLMO_PRECISION names another bit count.
class BigFloat {
 public:
  BigFloat();
  explicit BigFloat(long value);
  explicit BigFloat(int value) : BigFloat(static_cast<long>(value)) {}
  explicit BigFloat(double value);
  explicit BigFloat(const Rational& value, Round rnd = Round::Nearest);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static long default_precision();
  static void set_default_precision(long bits);

  /// Parses a decimal or "p/q" string.
  static BigFloat parse(std::string_view text, Round rnd = Round::Nearest);

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

  static BigFloat add(const BigFloat& a, const BigFloat& b, Round rnd);
  static BigFloat sub(const BigFloat& a, const BigFloat& b, Round rnd);
  static BigFloat mul(const BigFloat& a, const BigFloat& b, Round rnd);
  static BigFloat div(const BigFloat& a, const BigFloat& b, Round rnd);
  /// a * q for exact rational q, rounded once.
  static BigFloat mul(const BigFloat& a, const Rational& q, Round rnd);

  static BigFloat sqrt(const BigFloat& a, Round rnd);

  /// 2^(num/den), rounded in the requested direction.
  static BigFloat pow2_fraction(unsigned long num, unsigned long den, Round rnd);

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific rendering with `digits` significant decimal digits.
  std::string str(int digits = 40) const;
  /// Fixed-point rendering with `digits` digits after the point.
  std::string fixed(int digits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  friend std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.str(); }

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat ldexp(const BigFloat& x, long e);
/// Exact rational value of a finite BigFloat.
Rational to_rational(const BigFloat& x);

/// Closed interval [lo, hi] with rigorously rounded endpoints.
struct BigInterval {
  BigFloat lo;
  BigFloat hi;

  static BigInterval point(const Rational& q) { return {BigFloat(q, Round::Down), BigFloat(q, Round::Up)}; }
  bool contains(const BigFloat& x) const { return lo <= x && x <= hi; }
  BigFloat width() const { return BigFloat::sub(hi, lo, Round::Up); }
  BigFloat mid() const;
};

}  // namespace kolmo
