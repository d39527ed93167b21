#include "kolmo/bigfloat.hpp"
#include "kolmo/quadratic.hpp"
#include "kolmo/rational.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace kolmo;

TEST_SUITE("exact-arithmetic") {
  TEST_CASE("rat canonicalizes and rejects zero denominators") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(2, 4).str() == "1/2");
    CHECK(rat(-3, -6).str() == "1/2");
    CHECK(rat(3, -6).str() == "-1/2");
    CHECK_THROWS_AS(rat(1, 0), std::domain_error);
    CHECK(rat(1, 2).denominator() > 0);
  }

  TEST_CASE("parse and decimal rendering") {
    CHECK(Rational::parse("71/120") == rat(71, 120));
    CHECK(Rational::parse("-4") == Rational(-4));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("1/-3"));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK(rat(1, 3).decimal(4) == "0.3333");
    CHECK(rat(-1, 8).decimal(3) == "-0.125");
    CHECK(rat(-1, 3000).decimal(2) == "0.00");
  }

  TEST_CASE("rational arithmetic is exact") {
    const Rational x = rat(1, 3) + rat(1, 6);
    CHECK(x == rat(1, 2));
    CHECK(rat(1, 3) * Rational(3) == Rational(1));
    CHECK(pow2(-3) == rat(1, 8));
    CHECK(pow2(4) == Rational(16));
    CHECK(pow(rat(3, 4), 3) == rat(27, 64));
    CHECK(midpoint(rat(1, 15), Rational(1)) == rat(8, 15));
    CHECK_THROWS_AS(rat(1, 2) / Rational(0), std::domain_error);
  }

  TEST_CASE("quad_sign examples") {
    CHECK(quad_sign(QuadraticNumber(Rational(0), Rational(0))) == 0);
    CHECK(quad_sign(QuadraticNumber(Rational(-1), Rational(1))) == 1);
    CHECK(quad_sign(QuadraticNumber(Rational(3), Rational(-2))) == 1);
    CHECK(quad_sign(QuadraticNumber(Rational(-3), Rational(2))) == -1);
    CHECK(quad_sign(QuadraticNumber(Rational(1), Rational(-1))) == -1);
  }

  TEST_CASE("quad_sign agrees with a high-precision evaluation") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-2000, 2000);
    std::uniform_int_distribution<long> den(1, 500);
    for (int i = 0; i < 2000; ++i) {
      const Rational a = rat(num(rng), den(rng));
      const Rational b = rat(num(rng), den(rng));
      CHECK(quad_sign(QuadraticNumber(a, b)) == oracle::sqrt2_sign(a.raw(), b.raw()));
    }
  }

  TEST_CASE("Q(sqrt 2) field operations") {
    const QuadraticNumber r = QuadraticNumber::sqrt2();
    CHECK(r * r == QuadraticNumber(Rational(2)));
    const QuadraticNumber x(rat(3, 7), rat(-5, 11));
    CHECK(x / x == QuadraticNumber(Rational(1)));
    CHECK((x * x.conjugate()).sqrt2_part().is_zero());
    CHECK(QuadraticNumber(Rational(1)) < r);
    CHECK(r < QuadraticNumber(rat(3, 2)));
    CHECK_THROWS_AS(x / QuadraticNumber(), std::domain_error);
  }

  TEST_CASE("BigFloat directed rounding brackets the exact value") {
    const Rational third = rat(1, 3);
    const BigFloat lo(third, Round::Down);
    const BigFloat hi(third, Round::Up);
    CHECK(lo < hi);
    CHECK(to_rational(lo) < third);
    CHECK(third < to_rational(hi));
    CHECK(BigFloat::default_precision() >= 256);
    const BigFloat s_lo = BigFloat::sqrt(BigFloat(2L), Round::Down);
    const BigFloat s_hi = BigFloat::sqrt(BigFloat(2L), Round::Up);
    CHECK(to_rational(BigFloat::mul(s_lo, s_lo, Round::Down)) < Rational(2));
    CHECK(Rational(2) < to_rational(BigFloat::mul(s_hi, s_hi, Round::Up)));
    const BigFloat r2 = BigFloat::pow2_fraction(1, 2, Round::Nearest);
    CHECK(abs(r2 - BigFloat::sqrt(BigFloat(2L), Round::Nearest)) <= ldexp(BigFloat(1L), -250));
  }

  TEST_CASE("BigFloat parse and to_rational") {
    CHECK(to_rational(BigFloat::parse("0.5")) == rat(1, 2));
    CHECK(to_rational(BigFloat::parse("3/8")) == rat(3, 8));
    CHECK_THROWS(BigFloat::parse("x1"));
    CHECK(BigInterval::point(rat(1, 4)).width().is_zero());
    CHECK(BigInterval::point(rat(1, 5)).contains(BigFloat(rat(1, 5))));
  }
}
