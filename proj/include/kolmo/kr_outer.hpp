#pragma once

#include "kolmo/bigfloat.hpp"
#include "kolmo/piecewise_linear.hpp"
#include "kolmo/separation.hpp"
#include "kolmo/town_system.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

using Point = std::vector<Rational>;
using BigPL = PiecewiseLinear<BigFloat, BigFloat>;

/// Psi^q(x) = sum_p lambda_p psi(x_p - q eps), with psi the deepest built level.
struct Embedding {
  int n = 2;
  Rational epsilon;
  std::vector<BigInterval> lambdas;
  RationalPL psi;
  BigFloat tail_bound;

  /// Default weights 2^((p-1)/n) and psi = from_state(deepest).
  static Embedding from_state(const RefinementState& deepest, const BigFloat& tail_bound = BigFloat());
};

/// Nearest-rounded Psi^q(x). Throws std::out_of_range unless 0 <= q <= 2n.
BigFloat big_psi(const Embedding& e, int q, const Point& x);

/// Rigorous enclosure of Psi^q(x) (ignoring the tail of psi).
BigInterval big_psi_enclosure(const Embedding& e, int q, const Point& x);

/// [Psi at the left corner, Psi at the right corner] of the product of `cube`
/// (base towns, unshifted), widened by n * ||lambda||_1 * tail_bound.
BigInterval cube_image(const Embedding& e, int q, const std::vector<Interval>& cube);

struct TestFunction {
  std::string name;
  int n = 2;
  std::function<Rational(const Point&)> eval;
  /// |f(x) - f(y)| <= lipschitz * ||x - y||_inf on [0,1]^n.
  Rational lipschitz;
};

/// "const:c", "sum", "product", "runge2d". Throws std::invalid_argument.
TestFunction make_test_function(const std::string& spec, int n);

struct OuterState {
  int r = 0;
  std::vector<BigPL> chi;
  /// Grid estimate of ||f - f_r||_inf.
  BigFloat M;
  int j_r = 0;
  /// Least number of q whose level-j_r cube system contains a point of [0,1]^n.
  int min_cube_coverage = 0;
};

class DeeperPsiRequired : public std::runtime_error {
 public:
  explicit DeeperPsiRequired(const std::string& why) : std::runtime_error("build psi deeper: " + why) {}
};

struct OuterOptions {
  /// Grid points per axis for M_r.
  int grid = 101;
};

/// Separation verdicts already computed, keyed by level.
using SeparationCache = std::map<int, Verdict>;

/// Largest clipped town length at `level` over all frames [-q eps, 1 - q eps].
Rational max_cube_side(const RefinementState& state);

/// Least coverage of [0,1]^n by the 2n+1 cube systems of `state`, from per-axis masks.
int min_cube_coverage(const RefinementState& state);

/// max |f - f_r| over the grid, where f_r = sum_q chi^q(Psi^q).
BigFloat grid_error(const TestFunction& f, const Embedding& e, const std::vector<BigPL>& chi, int grid);

/// chi = 0 and M_0 = max |f| on the grid.
OuterState initial_outer_state(const TestFunction& f, const Embedding& e, const OuterOptions& opts = {});

/// One round of the outer iteration. `states` must end with the level psi was built from.
OuterState outer_round(const TestFunction& f, const Embedding& e, const std::vector<RefinementState>& states,
                       const OuterState& prev, const OuterOptions& opts = {}, SeparationCache* cache = nullptr);

/// sum_q chi^q(Psi^q(x)).
BigFloat kr_eval(const Embedding& e, const OuterState& outer, const Point& x);

}  // namespace kolmo
