#pragma once

#include "kolmo/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kolmo {

enum class TownOrigin { Root, SplitLeft, SplitRight, Plug };

std::string_view to_string(TownOrigin origin);
/// Inverse of to_string; throws std::invalid_argument on an unknown tag.
TownOrigin parse_origin(std::string_view tag);

/// Closed interval [start, end] carrying a constant plateau value of psi_j.
struct Town {
  Rational start;
  Rational end;
  Rational value;
  TownOrigin origin = TownOrigin::Root;
  int birth_level = 0;

  Rational length() const { return end - start; }
  bool contains(const Rational& x) const { return start <= x && x <= end; }
  friend bool operator==(const Town&, const Town&) = default;
};

struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// One level of the town system: the whole of psi_j as data.
struct RefinementState {
  int n = 2;
  Rational epsilon;
  int level = 0;
  std::vector<Town> towns;

  /// 1 - 2^-level.
  Rational slope_cap() const { return Rational(1) - pow2(-level); }

  /// The level-0 state: one town [-1, 1] with value 0.
  static RefinementState root(int n, const Rational& epsilon);

  /// Invariant violations in human-readable form; empty when the state is valid.
  std::vector<std::string> validate() const;

  friend bool operator==(const RefinementState&, const RefinementState&) = default;
};

struct Location {
  enum class Kind { Town, Hole, Outside };
  Kind kind = Kind::Outside;
  /// Town index, or the index of the town just below the hole.
  std::size_t index = 0;
  friend bool operator==(const Location&, const Location&) = default;
};

/// Towns translated by q*epsilon. Throws std::out_of_range unless 0 <= q <= 2n.
std::vector<Interval> shifted_view(const RefinementState& state, int q);

/// Closed-interval classification by binary search over the ordered town list.
Location locate(const std::vector<Town>& towns, const Rational& x);
inline Location locate(const RefinementState& state, const Rational& x) { return locate(state.towns, x); }

/// Number of q in 0..2n with x - q*eps inside a town.
int coverage_count(const RefinementState& state, const Rational& x);

/// Bit q set when x - q*eps lies in a town.
unsigned coverage_mask(const RefinementState& state, const Rational& x);

/// Every distinct coverage mask attained on [0, 1], found by an exact sweep over
/// the arrangement of shifted endpoints (cells and cell boundaries).
std::vector<unsigned> coverage_masks(const RefinementState& state);

/// Exact minimum of coverage_count over [0, 1].
int min_coverage(const RefinementState& state);

/// Largest number of shifted families with a gap at a common point of [0, 1].
int max_family_gaps(const RefinementState& state);

}  // namespace kolmo
