#pragma once

#include "kolmo/town_system.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

/// Rational or +infinity (std::nullopt).
using ExtRational = std::optional<Rational>;

std::string ext_str(const ExtRational& v);

struct BuildOptions {
  /// Towns of length >= theta^(level+1) are broken.
  Rational theta = rat(1, 2);
  /// Deepest perturbation step tried is len / 2^max_perturbation_depth.
  int max_perturbation_depth = 64;
};

struct BreakPlan {
  std::size_t town_index = 0;
  Rational p;
  ExtRational rho_plus;
  ExtRational rho_minus;
  ExtRational delta_plus;
  ExtRational delta_minus;
  Rational rho;
  Rational eta;
};

struct ShiftedPoint {
  Rational p;
  int q = 0;
  /// p - q*eps.
  Rational x;
  friend bool operator==(const ShiftedPoint&, const ShiftedPoint&) = default;
};

struct Hole {
  std::size_t left_index = 0;
  Rational left_end;
  Rational right_end;
  std::vector<ShiftedPoint> shifted_points;
  friend bool operator==(const Hole&, const Hole&) = default;
};

struct PlugSolution {
  Hole hole;
  std::size_t nu = 0;
  std::vector<Interval> endpoints;
  std::vector<Rational> values;
  Rational m_hat;
};

/// Dense form C x = z of the plug equations, unknowns (a_1, b_1, ..., a_nu, b_nu);
/// the nu+1 slope rows come first, then the nu-1 symmetry rows.
struct PlugSystem {
  std::vector<std::vector<Rational>> C;
  std::vector<Rational> z;
};

struct LevelAudit {
  int level = 0;
  std::vector<PlugSolution> plugs;
  std::vector<BreakPlan> breaks;
};

class BuildError : public std::runtime_error {
 public:
  BuildError(int level, const std::string& what) : std::runtime_error("level " + std::to_string(level) + ": " + what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

std::vector<std::size_t> select_breakables(const RefinementState& state, const BuildOptions& opts = {});

/// Break point for towns[town_index], avoiding conflicts with `prior` break points.
Rational choose_breakpoint(const RefinementState& state, std::size_t town_index, const std::vector<Rational>& prior,
                           const BuildOptions& opts = {});

std::vector<Hole> find_holes(const RefinementState& state, const std::vector<Rational>& breakpoints);

/// psi_j at x, read from the ordered town list (linear across holes).
Rational psi_value(const std::vector<Town>& towns, const Rational& x);

PlugSystem assemble_plug_system(const Hole& hole, const Rational& f_left, const Rational& f_right,
                                const std::vector<Rational>& f, const Rational& m_hat);

/// Exact plug endpoints for one hole of `psi`; throws BuildError if the ordering fails.
PlugSolution solve_plugs(const Hole& hole, const RefinementState& psi, const Rational& m_hat);

/// Gap around p in towns[town_index] of the post-plug list. `copies` is the sorted
/// set {p~ + k eps : |k| <= 4n} over all break points of the level.
BreakPlan create_gap(const RefinementState& post_plug, std::size_t town_index, const Rational& p,
                     const std::vector<Rational>& copies);

/// One level of the algorithm. `order`, when non-empty, is a permutation of the
/// breakable towns fixing the order of plug solving and gap creation.
RefinementState refine(const RefinementState& state, const BuildOptions& opts = {},
                       const std::vector<std::size_t>& order = {}, LevelAudit* audit = nullptr);

/// States for levels 0..levels. Throws std::invalid_argument on bad parameters.
std::vector<RefinementState> build(int n, const Rational& epsilon, int levels, const BuildOptions& opts = {},
                                   std::vector<LevelAudit>* audit = nullptr);

}  // namespace kolmo
