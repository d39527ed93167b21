#include "kolmo/inner_builder.hpp"
#include "kolmo/piecewise_linear.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace kolmo;

namespace {

const std::vector<RefinementState>& states() {
  static const auto s = build(2, rat(1, 5), 7);
  return s;
}

}  // namespace

TEST_SUITE("function-kernel") {
  TEST_CASE("from_state") {
    const auto psi0 = from_state(states()[0]);
    CHECK(psi0.size() == 2);
    CHECK(psi0(Rational(0)) == Rational(0));
    CHECK(psi0.lipschitz_constant() == Rational(0));
    const auto psi1 = from_state(states()[1]);
    using K = RationalPL::Knot;
    CHECK(psi1.knots() == std::vector<K>{{Rational(-1), Rational(0)},
                                         {rat(-1, 15), Rational(0)},
                                         {rat(1, 15), rat(1, 15)},
                                         {Rational(1), rat(1, 15)}});
    for (const auto& s : states()) CHECK(from_state(s).size() == 2 * s.towns.size());
  }

  TEST_CASE("eval") {
    const auto psi1 = from_state(states()[1]);
    CHECK(psi1(Rational(0)) == rat(1, 30));
    CHECK(psi1(rat(-1, 2)) == Rational(0));
    CHECK(psi1(Rational(2)) == rat(1, 15));
    CHECK(psi1(Rational(-5)) == Rational(0));
  }

  TEST_CASE("eval agrees with a linear-scan oracle") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-1100, 1100);
    for (const auto& s : states()) {
      const auto psi = from_state(s);
      const auto knots = oracle::psi_knots(s);
      for (int i = 0; i < 200; ++i) {
        const Rational x = rat(num(rng), 1000);
        REQUIRE(oracle::q(psi(x)) == oracle::pl_eval(knots, oracle::q(x)));
      }
      for (const auto& [x, y] : knots) REQUIRE(oracle::q(psi(Rational(x))) == y);
    }
  }

  TEST_CASE("lipschitz_constant") {
    CHECK(from_state(states()[0]).lipschitz_constant() == Rational(0));
    CHECK(from_state(states()[1]).lipschitz_constant() == rat(1, 2));
    for (const auto& s : states()) {
      const auto L = from_state(s).lipschitz_constant();
      CHECK(L <= Rational(1) - pow2(-s.level));
      CHECK(L < Rational(1));
    }
  }

  TEST_CASE("sup_diff") {
    const auto psi0 = from_state(states()[0]);
    const auto psi1 = from_state(states()[1]);
    CHECK(sup_diff(psi1, psi0) == rat(1, 15));
    CHECK(sup_diff(psi1, psi1) == Rational(0));
    for (std::size_t j = 1; j < states().size(); ++j) {
      const auto f = from_state(states()[j]);
      const auto g = from_state(states()[j - 1]);
      mpq_class best = 0;
      const auto kf = oracle::psi_knots(states()[j]);
      const auto kg = oracle::psi_knots(states()[j - 1]);
      for (const auto* ks : {&kf, &kg}) {
        for (const auto& [x, y] : *ks) best = std::max(best, mpq_class(abs(oracle::pl_eval(kf, x) - oracle::pl_eval(kg, x))));
      }
      CHECK(oracle::q(sup_diff(f, g)) == best);
    }
  }

  TEST_CASE("sum on merged knots") {
    const auto f = from_state(states()[2]);
    const auto g = from_state(states()[3]);
    const auto h = f + g;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-1000, 1000);
    for (int i = 0; i < 300; ++i) {
      const Rational x = rat(num(rng), 997);
      REQUIRE(h(x) == f(x) + g(x));
    }
  }

  TEST_CASE("constructor rejects unordered knots") {
    using K = RationalPL::Knot;
    CHECK_THROWS(RationalPL({K{Rational(1), Rational(0)}, K{Rational(0), Rational(0)}}));
    CHECK_THROWS(RationalPL(std::vector<K>{}));
    CHECK(RationalPL::constant(Rational(3))(Rational(100)) == Rational(3));
  }

  TEST_CASE("monotone") {
    for (const auto& s : states()) CHECK(is_monotone(from_state(s)));
    using K = RationalPL::Knot;
    CHECK_FALSE(is_monotone(RationalPL({K{Rational(0), Rational(1)}, K{Rational(1), Rational(0)}})));
  }
}
