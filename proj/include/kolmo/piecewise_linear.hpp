#pragma once

#include "kolmo/town_system.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kolmo {

/// Continuous piecewise-linear function given by knots (x strictly increasing),
/// constant beyond the outermost knots.
///
/// X is the abscissa scalar, Y the value scalar. Y must support Y * X and Y / X
/// (Rational/QuadraticNumber does by implicit embedding).
template <class X, class Y>
class PiecewiseLinear {
 public:
  struct Knot {
    X x;
    Y y;
    friend bool operator==(const Knot&, const Knot&) = default;
  };

  PiecewiseLinear() : knots_{Knot{X(0), Y(0)}} {}

  /// Throws std::invalid_argument when `knots` is empty or not strictly increasing in x.
  explicit PiecewiseLinear(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (knots_.empty()) throw std::invalid_argument("piecewise-linear function needs a knot");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      if (!(knots_[i - 1].x < knots_[i].x)) throw std::invalid_argument("knot abscissae not strictly increasing");
    }
  }

  static PiecewiseLinear constant(Y value) { return PiecewiseLinear({Knot{X(0), std::move(value)}}); }

  const std::vector<Knot>& knots() const { return knots_; }
  std::size_t size() const { return knots_.size(); }
  const X& lo() const { return knots_.front().x; }
  const X& hi() const { return knots_.back().x; }

  Y eval(const X& x) const {
    if (!(knots_.front().x < x)) return knots_.front().y;
    if (!(x < knots_.back().x)) return knots_.back().y;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x, [](const X& v, const Knot& k) { return v < k.x; });
    const Knot& right = *it;
    const Knot& left = *(it - 1);
    if (x == left.x) return left.y;
    return left.y + (right.y - left.y) * ((x - left.x) / (right.x - left.x));
  }

  Y operator()(const X& x) const { return eval(x); }

  /// max over segments of |dy/dx|.
  Y lipschitz_constant() const {
    Y best(0);
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      Y s = (knots_[i].y - knots_[i - 1].y) / (knots_[i].x - knots_[i - 1].x);
      if (s < Y(0)) s = -s;
      if (best < s) best = s;
    }
    return best;
  }

  /// Sorted union of the knot abscissae of f and g.
  static std::vector<X> merged_abscissae(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    std::vector<X> xs;
    xs.reserve(f.size() + g.size());
    for (const Knot& k : f.knots_) xs.push_back(k.x);
    for (const Knot& k : g.knots_) xs.push_back(k.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
  }

  /// ||f - g||_inf, attained on the merged knot set.
  friend Y sup_diff(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    Y best(0);
    for (const X& x : merged_abscissae(f, g)) {
      Y d = f.eval(x) - g.eval(x);
      if (d < Y(0)) d = -d;
      if (best < d) best = d;
    }
    return best;
  }

  /// f + g, with knots on the merged set.
  friend PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    std::vector<Knot> out;
    for (const X& x : merged_abscissae(f, g)) out.push_back({x, f.eval(x) + g.eval(x)});
    return PiecewiseLinear(std::move(out));
  }

  friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

 private:
  std::vector<Knot> knots_;
};

using RationalPL = PiecewiseLinear<Rational, Rational>;

/// psi_j of a state: knots at every town start and end carrying the town value.
RationalPL from_state(const RefinementState& state);

/// Non-decreasing check over consecutive knots.
template <class X, class Y>
bool is_monotone(const PiecewiseLinear<X, Y>& f) {
  const auto& k = f.knots();
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (k[i].y < k[i - 1].y) return false;
  }
  return true;
}

}  // namespace kolmo
