#pragma once

#include "kolmo/bigfloat.hpp"
#include "kolmo/town_system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kolmo {

struct Failure {
  std::string item;
  std::string detail;
};

struct VerificationReport {
  int level = 0;
  Rational max_diameter;
  Rational diameter_target;
  int min_coverage = 0;
  Rational lipschitz;
  bool diameter_ok = true;
  bool coverage_ok = true;
  bool monotone = true;
  bool slope_cap_ok = true;
  bool image_separation_ok = true;
  /// Smallest distance between plateau values of consecutive towns (0 for a single town).
  BigFloat min_image_gap;
  std::vector<Failure> failures;

  bool passed() const { return failures.empty(); }
};

/// max(2 (3/4)^j, (1/2)^j).
Rational diameter_envelope(int level);

/// Items 1-4 of the interval criterion, decided exactly on one state.
VerificationReport check_criterion(const RefinementState& state);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct CubeSeparation {
  Verdict verdict = Verdict::Pass;
  int level = 0;
  std::size_t cubes = 0;
  /// Smallest gap between sorted images before tail widening (negative on overlap).
  BigFloat min_gap;
  /// Same after widening every image by n * ||lambda||_1 * tail.
  BigFloat widened_min_gap;
  std::string detail;
};

/// Enclosures of lambda_p = 2^((p-1)/n), p = 1..n.
std::vector<BigInterval> default_lambdas(int n);

/// Disjointness of the images of all level-`at_level` cubes under Psi^q, q = 0..2n,
/// where psi is taken from states.back() and the limit is within `tail` of it.
///
/// Fail means images overlap even after shrinking them by the tail widening,
/// so the limit images overlap too. Inconclusive means only the widened images meet.
CubeSeparation check_cube_separation(const std::vector<RefinementState>& states, const std::vector<BigInterval>& lambdas,
                                     int at_level, const BigFloat& tail);

struct ConvergenceReport {
  /// sup_diff(psi_{j+1}, psi_j) for j = 0..J-1.
  std::vector<Rational> sup_diffs;
  /// d_j / d_{j-1} for j = 1..J-1 (skipped where d_{j-1} = 0).
  std::vector<Rational> ratios;
  std::optional<Rational> max_ratio;
  /// Least-squares rate of log d_j against j.
  double fitted_rate = 0.0;
};

ConvergenceReport check_convergence(const std::vector<RefinementState>& states);

/// Geometric estimate of sum_{k >= J} ||psi_{k+1} - psi_k|| from the last three ratios;
/// std::nullopt when those ratios do not contract.
std::optional<Rational> extrapolated_tail(const ConvergenceReport& report);

}  // namespace kolmo
