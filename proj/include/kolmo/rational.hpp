#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace kolmo {

/// Exact rational number in canonical form (positive denominator, reduced).
///
/// Every town endpoint, plateau value and gap radius is a Rational, so all
/// lemma conditions on the town system are decided exactly.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : v_(static_cast<long>(value)) {}  // NOLINT: implicit by design of numeric literals

  /// num/den; throws std::domain_error when den == 0.
  Rational(const mpz_class& num, const mpz_class& den);

  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Accepts "p/q", "p" and an optional leading sign. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  /// Canonical "numerator/denominator" (integers render as "k/1").
  std::string str() const;

  /// Decimal rendering with `digits` significant fractional digits, truncated toward zero.
  std::string decimal(int digits) const;

  double to_double() const { return v_.get_d(); }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

/// rat(num, den): canonical num/den, error on a zero denominator.
Rational rat(long num, long den);

Rational abs(const Rational& x);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// 2^e for integer e (negative allowed).
Rational pow2(int e);

/// base^e for e >= 0.
Rational pow(const Rational& base, unsigned e);

/// Midpoint (a + b) / 2.
Rational midpoint(const Rational& a, const Rational& b);

struct RationalHash {
  std::size_t operator()(const Rational& r) const;
};

}  // namespace kolmo
