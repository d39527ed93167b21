#include "kolmo/quadratic.hpp"

#include <cmath>
#include <stdexcept>

namespace kolmo {

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
  Rational a = a_ * o.a_ + Rational(2) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  const Rational norm = o.a_ * o.a_ - Rational(2) * o.b_ * o.b_;
  if (norm.is_zero()) throw std::domain_error("division by zero in Q(sqrt 2)");
  *this *= o.conjugate();
  a_ /= norm;
  b_ /= norm;
  return *this;
}

int quad_sign(const QuadraticNumber& x) {
  const int sa = x.rational_part().sign();
  const int sb = x.sqrt2_part().sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b| sqrt 2, i.e. a^2 vs 2 b^2 (never equal for b != 0).
  const Rational a2 = x.rational_part() * x.rational_part();
  const Rational b2 = Rational(2) * x.sqrt2_part() * x.sqrt2_part();
  return a2 > b2 ? sa : sb;
}

std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
  const int s = quad_sign(x - y);
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

QuadraticNumber abs(const QuadraticNumber& x) { return quad_sign(x) < 0 ? -x : x; }

double QuadraticNumber::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(2.0);
}

std::string QuadraticNumber::str() const {
  if (b_.is_zero()) return a_.str();
  return a_.str() + (b_.sign() < 0 ? " - " : " + ") + abs(b_).str() + "*sqrt2";
}

}  // namespace kolmo
