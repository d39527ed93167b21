#include "kolmo/inner_builder.hpp"
#include "kolmo/kr_outer.hpp"

#include <doctest.h>

#include <random>

using namespace kolmo;

namespace {

const std::vector<RefinementState>& states() {
  static const auto s = build(2, rat(1, 5), 5);
  return s;
}

BigFloat tiny() { return ldexp(BigFloat(1L), -200); }

}  // namespace

TEST_SUITE("kr-outer") {
  TEST_CASE("big_psi of the zero inner function") {
    const auto e = Embedding::from_state(states()[0]);
    for (int q = 0; q <= 4; ++q) CHECK(big_psi(e, q, {rat(1, 3), rat(2, 7)}).is_zero());
    CHECK_THROWS_AS(big_psi(e, 5, {Rational(0), Rational(0)}), std::out_of_range);
  }

  TEST_CASE("big_psi on the first plateau") {
    const auto e = Embedding::from_state(states()[1]);
    const BigFloat want = BigFloat(rat(1, 15)) + BigFloat(rat(1, 15)) * BigFloat::sqrt(BigFloat(2L), Round::Nearest);
    CHECK(abs(big_psi(e, 0, {rat(1, 2), rat(1, 2)}) - want) <= tiny());
    const auto box = big_psi_enclosure(e, 0, {rat(1, 2), rat(1, 2)});
    CHECK(box.lo <= box.hi);
    CHECK(abs(box.mid() - want) <= tiny());
  }

  TEST_CASE("big_psi is monotone in each coordinate") {
    const auto e = Embedding::from_state(states()[5]);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> u(0, 1000);
    for (int i = 0; i < 200; ++i) {
      Point x{rat(u(rng), 1000), rat(u(rng), 1000)};
      Point y{x[0] + rat(u(rng), 5000), x[1] + rat(u(rng), 5000)};
      const int q = i % 5;
      CHECK(big_psi(e, q, x) <= big_psi(e, q, y));
    }
  }

  TEST_CASE("cube_image") {
    const auto e = Embedding::from_state(states()[1]);
    const auto& t = states()[1].towns;
    const auto img = cube_image(e, 0, {{t[1].start, t[1].end}, {t[0].start, t[0].end}});
    CHECK(to_rational(img.lo) <= rat(1, 15));
    CHECK(rat(1, 15) <= to_rational(img.hi));
    CHECK(img.width() <= ldexp(BigFloat(1L), -240));
    const auto e0 = Embedding::from_state(states()[0]);
    const auto whole = cube_image(e0, 0, {{Rational(-1), Rational(1)}, {Rational(-1), Rational(1)}});
    CHECK(whole.lo.is_zero());
    CHECK(whole.hi.is_zero());
  }

  TEST_CASE("test functions and their Lipschitz constants") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> u(0, 1000);
    for (const char* name : {"sum", "product", "runge2d", "const:3"}) {
      const auto f = make_test_function(name, 2);
      for (int i = 0; i < 300; ++i) {
        Point x{rat(u(rng), 1000), rat(u(rng), 1000)};
        Point y{rat(u(rng), 1000), rat(u(rng), 1000)};
        const Rational dist = max(abs(x[0] - y[0]), abs(x[1] - y[1]));
        CHECK(abs(f.eval(x) - f.eval(y)) <= f.lipschitz * dist);
      }
    }
    CHECK(make_test_function("sum", 2).eval({rat(1, 4), rat(1, 2)}) == rat(3, 4));
    CHECK(make_test_function("product", 2).eval({rat(1, 4), rat(1, 2)}) == rat(1, 8));
    CHECK(make_test_function("const:-2.5", 2).eval({Rational(0), Rational(0)}) == rat(-5, 2));
    CHECK_THROWS_AS(make_test_function("cosine", 2), std::invalid_argument);
    CHECK_THROWS_AS(make_test_function("runge2d", 3), std::invalid_argument);
  }

  TEST_CASE("zero function stays zero") {
    const auto e = Embedding::from_state(states().back());
    const auto f = make_test_function("const:0", 2);
    OuterOptions opts;
    opts.grid = 11;
    auto st = initial_outer_state(f, e, opts);
    CHECK(st.M.is_zero());
    for (int r = 1; r <= 3; ++r) {
      st = outer_round(f, e, states(), st, opts);
      CHECK(st.M.is_zero());
      CHECK(st.r == r);
    }
    CHECK(kr_eval(e, st, {rat(1, 3), rat(1, 2)}).is_zero());
  }

  TEST_CASE("constant function after one round") {
    const auto e = Embedding::from_state(states().back());
    const auto f = make_test_function("const:3", 2);
    OuterOptions opts;
    opts.grid = 21;
    const auto st0 = initial_outer_state(f, e, opts);
    CHECK(st0.M == BigFloat(3L));
    const auto st1 = outer_round(f, e, states(), st0, opts);
    // every point gets c/(n+1) from all 2n+1 families
    CHECK(abs(st1.M - BigFloat(2L)) <= tiny());
    CHECK(abs(kr_eval(e, st1, {rat(1, 3), rat(1, 2)}) - BigFloat(5L)) <= tiny());
    CHECK(st1.M <= BigFloat(rat(5, 6)) * st0.M);
  }

  TEST_CASE("a shallow psi is refused, not silently used") {
    const std::vector<RefinementState> shallow(states().begin(), states().begin() + 4);
    const auto e = Embedding::from_state(shallow.back());
    const auto f = make_test_function("sum", 2);
    OuterOptions opts;
    opts.grid = 11;
    const auto st0 = initial_outer_state(f, e, opts);
    try {
      outer_round(f, e, shallow, st0, opts);
      FAIL("expected DeeperPsiRequired");
    } catch (const DeeperPsiRequired& err) {
      CHECK(std::string(err.what()).rfind("build psi deeper", 0) == 0);
    }
  }

  TEST_CASE("cube geometry") {
    CHECK(max_cube_side(states()[0]) == Rational(1));
    CHECK(min_cube_coverage(states()[0]) == 5);
    for (const auto& s : states()) CHECK(min_cube_coverage(s) >= 1);
  }
}
