#include "kolmo/town_system.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace kolmo {

std::string_view to_string(TownOrigin origin) {
  switch (origin) {
    case TownOrigin::Root:
      return "root";
    case TownOrigin::SplitLeft:
      return "split-left";
    case TownOrigin::SplitRight:
      return "split-right";
    case TownOrigin::Plug:
      return "plug";
  }
  return "root";
}

TownOrigin parse_origin(std::string_view tag) {
  for (auto o : {TownOrigin::Root, TownOrigin::SplitLeft, TownOrigin::SplitRight, TownOrigin::Plug}) {
    if (to_string(o) == tag) return o;
  }
  throw std::invalid_argument("unknown town origin '" + std::string(tag) + "'");
}

RefinementState RefinementState::root(int n, const Rational& epsilon) {
  RefinementState s;
  s.n = n;
  s.epsilon = epsilon;
  s.level = 0;
  s.towns.push_back({Rational(-1), Rational(1), Rational(0), TownOrigin::Root, 0});
  return s;
}

std::vector<std::string> RefinementState::validate() const {
  std::vector<std::string> bad;
  if (n < 1) bad.push_back("n must be positive");
  if (epsilon.sign() <= 0 || (n >= 1 && epsilon > rat(1, 2L * n))) bad.push_back("epsilon outside (0, 1/(2n)]");
  if (level < 0) bad.push_back("negative level");
  if (towns.empty()) bad.push_back("no towns");
  const Rational cap = slope_cap();
  for (std::size_t i = 0; i < towns.size(); ++i) {
    const Town& t = towns[i];
    const std::string at = "town " + std::to_string(i);
    if (!(t.start < t.end)) bad.push_back(at + ": start >= end");
    if (t.start < Rational(-1) || t.end > Rational(1)) bad.push_back(at + ": outside [-1,1]");
    if (i + 1 == towns.size()) continue;
    const Town& u = towns[i + 1];
    if (!(t.end < u.start)) {
      bad.push_back(at + ": overlaps or touches town " + std::to_string(i + 1));
      continue;
    }
    if (!(t.value < u.value)) bad.push_back(at + ": value not below town " + std::to_string(i + 1));
    if ((u.value - t.value) / (u.start - t.end) > cap) bad.push_back(at + ": slope to next town exceeds cap");
  }
  return bad;
}

std::vector<Interval> shifted_view(const RefinementState& state, int q) {
  if (q < 0 || q > 2 * state.n) throw std::out_of_range("shift q=" + std::to_string(q) + " outside 0..2n");
  const Rational d = state.epsilon * Rational(q);
  std::vector<Interval> out;
  out.reserve(state.towns.size());
  for (const Town& t : state.towns) out.push_back({t.start + d, t.end + d});
  return out;
}

Location locate(const std::vector<Town>& towns, const Rational& x) {
  auto it = std::upper_bound(towns.begin(), towns.end(), x,
                             [](const Rational& v, const Town& t) { return v < t.start; });
  if (it == towns.begin()) return {Location::Kind::Outside, 0};
  const std::size_t i = static_cast<std::size_t>(it - towns.begin()) - 1;
  if (x <= towns[i].end) return {Location::Kind::Town, i};
  if (i + 1 == towns.size()) return {Location::Kind::Outside, 0};
  return {Location::Kind::Hole, i};
}

unsigned coverage_mask(const RefinementState& state, const Rational& x) {
  unsigned mask = 0;
  for (int q = 0; q <= 2 * state.n; ++q) {
    if (locate(state.towns, x - state.epsilon * Rational(q)).kind == Location::Kind::Town) mask |= 1U << q;
  }
  return mask;
}

int coverage_count(const RefinementState& state, const Rational& x) {
  return std::popcount(coverage_mask(state, x));
}

std::vector<unsigned> coverage_masks(const RefinementState& state) {
  std::vector<Rational> events{Rational(0), Rational(1)};
  for (int q = 0; q <= 2 * state.n; ++q) {
    const Rational d = state.epsilon * Rational(q);
    for (const Town& t : state.towns) {
      for (const Rational* e : {&t.start, &t.end}) {
        Rational x = *e + d;
        if (x.sign() >= 0 && x <= Rational(1)) events.push_back(std::move(x));
      }
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  std::set<unsigned> seen;
  for (std::size_t i = 0; i < events.size(); ++i) {
    seen.insert(coverage_mask(state, events[i]));
    if (i + 1 < events.size()) seen.insert(coverage_mask(state, midpoint(events[i], events[i + 1])));
  }
  return {seen.begin(), seen.end()};
}

int min_coverage(const RefinementState& state) {
  int best = 2 * state.n + 1;
  for (unsigned m : coverage_masks(state)) best = std::min(best, std::popcount(m));
  return best;
}

int max_family_gaps(const RefinementState& state) { return 2 * state.n + 1 - min_coverage(state); }

}  // namespace kolmo
