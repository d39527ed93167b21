#include "kolmo/inner_builder.hpp"
#include "kolmo/town_system.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace kolmo;

namespace {

RefinementState level1() { return build(2, rat(1, 5), 1).back(); }

}  // namespace

TEST_SUITE("town-system") {
  TEST_CASE("shifted_view") {
    const auto root = RefinementState::root(2, rat(1, 5));
    CHECK(shifted_view(root, 0) == std::vector<Interval>{{Rational(-1), Rational(1)}});
    CHECK(shifted_view(root, 4) == std::vector<Interval>{{rat(-1, 5), rat(9, 5)}});
    CHECK(shifted_view(level1(), 1) ==
          std::vector<Interval>{{rat(-4, 5), rat(2, 15)}, {rat(4, 15), rat(6, 5)}});
    CHECK_THROWS_AS(shifted_view(root, 5), std::out_of_range);
  }

  TEST_CASE("coverage_count") {
    const auto root = RefinementState::root(2, rat(1, 5));
    CHECK(coverage_count(root, rat(1, 2)) == 5);
    CHECK(coverage_count(level1(), Rational(0)) == 4);
    CHECK(coverage_count(level1(), rat(1, 2)) == 5);
    CHECK(coverage_mask(level1(), Rational(0)) == 0b11110u);
  }

  TEST_CASE("min_coverage") {
    CHECK(min_coverage(RefinementState::root(2, rat(1, 5))) == 5);
    CHECK(min_coverage(level1()) == 4);
    CHECK(max_family_gaps(level1()) == 1);
  }

  TEST_CASE("min_coverage matches a brute-force probe over built levels") {
    for (const auto& [n, eps] : std::vector<std::pair<int, Rational>>{{2, rat(1, 5)}, {2, rat(1, 7)}, {3, rat(1, 7)}}) {
      const auto states = build(n, eps, 5);
      for (const auto& s : states) {
        CAPTURE(n);
        CAPTURE(s.level);
        CHECK(min_coverage(s) == oracle::min_coverage(s));
        for (const auto& x : oracle::probe_points(s)) {
          REQUIRE(coverage_count(s, Rational(x)) == oracle::coverage(s, x));
        }
      }
    }
  }

  TEST_CASE("locate") {
    const auto s = level1();
    CHECK(locate(s, rat(-1, 15)) == Location{Location::Kind::Town, 0});
    CHECK(locate(s, Rational(0)) == Location{Location::Kind::Hole, 0});
    CHECK(locate(s, rat(1, 15)) == Location{Location::Kind::Town, 1});
    CHECK(locate(s, rat(3, 2)).kind == Location::Kind::Outside);
    CHECK(locate(s, Rational(-2)).kind == Location::Kind::Outside);
  }

  TEST_CASE("validate reports broken invariants") {
    auto s = level1();
    CHECK(s.validate().empty());
    s.towns[1].value = Rational(0);
    CHECK_FALSE(s.validate().empty());
    auto t = level1();
    t.towns[1].start = rat(-1, 10);
    CHECK_FALSE(t.validate().empty());
  }

  TEST_CASE("origin tags round-trip") {
    for (auto o : {TownOrigin::Root, TownOrigin::SplitLeft, TownOrigin::SplitRight, TownOrigin::Plug}) {
      CHECK(parse_origin(to_string(o)) == o);
    }
    CHECK_THROWS(parse_origin("nope"));
  }
}
