#pragma once

#include "kolmo/piecewise_linear.hpp"
#include "kolmo/town_system.hpp"

#include <string>
#include <vector>

namespace kolmo {

/// Town bars for each given state: one block per level, 2n+1 rows per block
/// (row q shows the towns shifted by q*eps).
std::string towns_svg(const std::vector<RefinementState>& states);

/// Graph of psi over its knot range, sampled at `samples` points.
std::string psi_svg(const RationalPL& psi, int samples = 2001);

}  // namespace kolmo
