#include "kolmo/piecewise_linear.hpp"

namespace kolmo {

RationalPL from_state(const RefinementState& state) {
  std::vector<RationalPL::Knot> knots;
  knots.reserve(2 * state.towns.size());
  for (const Town& t : state.towns) {
    knots.push_back({t.start, t.value});
    knots.push_back({t.end, t.value});
  }
  return RationalPL(std::move(knots));
}

}  // namespace kolmo
