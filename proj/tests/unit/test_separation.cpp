#include "kolmo/inner_builder.hpp"
#include "kolmo/separation.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace kolmo;

TEST_SUITE("separation-verifier") {
  TEST_CASE("check_criterion on the first two levels") {
    const auto states = build(2, rat(1, 5), 1);
    const auto r0 = check_criterion(states[0]);
    CHECK(r0.passed());
    CHECK(r0.min_coverage == 5);
    const auto r1 = check_criterion(states[1]);
    CHECK(r1.passed());
    CHECK(r1.min_coverage == 4);
    CHECK(r1.max_diameter == rat(14, 15));
    CHECK(r1.lipschitz == rat(1, 2));
    CHECK(r1.monotone);
    CHECK(r1.slope_cap_ok);
    CHECK(r1.image_separation_ok);
  }

  TEST_CASE("a tampered state names the offending pair") {
    auto s = build(2, rat(1, 5), 3).back();
    s.towns[4].value = s.towns[3].value;
    const auto r = check_criterion(s);
    CHECK_FALSE(r.passed());
    CHECK_FALSE(r.image_separation_ok);
    REQUIRE_FALSE(r.failures.empty());
    bool named = false;
    for (const auto& f : r.failures) named = named || f.detail.find("3") != std::string::npos;
    CHECK(named);
  }

  TEST_CASE("a slope above the cap is reported") {
    auto s = build(2, rat(1, 5), 2).back();
    s.towns[1].end = s.towns[2].start - rat(1, 1000000);
    const auto r = check_criterion(s);
    CHECK_FALSE(r.slope_cap_ok);
    CHECK_FALSE(r.passed());
  }

  TEST_CASE("diameter envelope") {
    CHECK(diameter_envelope(0) == Rational(2));
    CHECK(diameter_envelope(1) == rat(3, 2));
    CHECK(diameter_envelope(4) == Rational(2) * pow(rat(3, 4), 4));
  }

  TEST_CASE("integrally dependent weights collide") {
    const auto states = build(2, rat(1, 5), 1);
    const std::vector<BigInterval> ones{BigInterval::point(Rational(1)), BigInterval::point(Rational(1))};
    const auto sep = check_cube_separation(states, ones, 1, BigFloat());
    CHECK(sep.verdict == Verdict::Fail);
    CHECK(sep.cubes > 0);
  }

  TEST_CASE("independent weights separate the deepest level's own cubes") {
    const auto states = build(2, rat(1, 5), 3);
    const auto sep = check_cube_separation(states, default_lambdas(2), 3, BigFloat());
    CHECK(sep.verdict == Verdict::Pass);
    CHECK(sep.min_gap > BigFloat());
  }

  TEST_CASE("default weights enclose 2^((p-1)/n)") {
    const auto l = default_lambdas(2);
    REQUIRE(l.size() == 2);
    CHECK(l[0].lo == BigFloat(1L));
    CHECK(to_rational(BigFloat::mul(l[1].lo, l[1].lo, Round::Up)) <= Rational(2));
    CHECK(Rational(2) <= to_rational(BigFloat::mul(l[1].hi, l[1].hi, Round::Down)));
  }

  TEST_CASE("check_convergence") {
    const auto two = build(2, rat(1, 5), 1);
    CHECK(check_convergence(two).sup_diffs == std::vector<Rational>{rat(1, 15)});
    const auto s = two.back();
    auto next = s;
    next.level = 2;
    const auto flat = check_convergence({s, next, next});
    CHECK(flat.sup_diffs == std::vector<Rational>{Rational(0), Rational(0)});
    const auto deep = check_convergence(build(2, rat(1, 5), 6));
    CHECK(deep.sup_diffs.size() == 6);
    CHECK(deep.ratios.size() == 5);
  }

  TEST_CASE("extrapolated tail") {
    ConvergenceReport r;
    r.sup_diffs = {rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 16)};
    r.ratios = {rat(1, 2), rat(1, 2), rat(1, 2)};
    CHECK(extrapolated_tail(r) == rat(1, 16));
    r.ratios.back() = rat(3, 2);
    CHECK_FALSE(extrapolated_tail(r).has_value());
  }
}
