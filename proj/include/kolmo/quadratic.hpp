#pragma once

#include "kolmo/rational.hpp"

#include <compare>
#include <ostream>
#include <string>

namespace kolmo {

/// Exact element a + b*sqrt(2) of Q(sqrt 2).
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational a) : a_(std::move(a)) {}  // NOLINT: rationals embed in Q(sqrt 2)
  QuadraticNumber(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadraticNumber sqrt2() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  QuadraticNumber operator-() const { return {-a_, -b_}; }
  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  /// Division via the conjugate; throws std::domain_error on zero.
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y);

  /// a + b*sqrt(2) conjugated to a - b*sqrt(2).
  QuadraticNumber conjugate() const { return {a_, -b_}; }

  double to_double() const;
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) { return os << x.str(); }

 private:
  Rational a_;
  Rational b_;
};

/// Sign of a + b*sqrt(2) decided from a and b alone: when the signs of a and b
/// disagree, compare a^2 against 2 b^2.
int quad_sign(const QuadraticNumber& x);

QuadraticNumber abs(const QuadraticNumber& x);

}  // namespace kolmo
