#pragma once

#include "kolmo/piecewise_linear.hpp"
#include "kolmo/quadratic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kolmo {

/// The linear inner-function candidate psi^{p,q}(x) = alpha_p (x + q eps), n = 2.
struct LinearCandidate {
  int n = 2;
  int gamma = 10;
  Rational epsilon = rat(1, 50);
  std::vector<QuadraticNumber> alphas{QuadraticNumber(Rational(1)), QuadraticNumber::sqrt2()};

  /// Violated preconditions (gamma >= 2n+2, 1/gamma^2 < eps < 1/gamma, alphas independent).
  std::vector<std::string> validate() const;
};

struct BadInterval {
  /// Left end of A^0[d], a multiple of gamma^-k.
  Rational d;
  /// A^q[d] intersected with [0, 1].
  Interval clipped;
};

/// A^q[d] = [d, d + (gamma^2 - 1)/gamma^(k+2)] + q eps, for every d in gamma^-k Z
/// whose interval meets [0, 1].
std::vector<BadInterval> bad_intervals(const LinearCandidate& c, int k, int q);

/// Exact minimum over x in [0,1] of the number of q with x in some A^q[d] (endpoint sweep).
int bad_min_coverage(const LinearCandidate& c, int k);

using QuadPL = PiecewiseLinear<Rational, QuadraticNumber>;

/// psi^{p,q}_k: plateau alpha_p (d + q eps) on each A^q[d], linear across the gaps. p is 1-based.
QuadPL bad_psi_level(const LinearCandidate& c, int k, int p, int q);

/// Exact sup over [0,1] of |psi^{p,q}_k(x) - alpha_p x|.
QuadraticNumber bad_psi_error(const LinearCandidate& c, int k, int p, int q);

struct LemmaCheck {
  int item = 0;
  int k = 0;
  bool passed = true;
  std::size_t checks = 0;
  bool sampled = false;
  std::string detail;
};

struct BadLemmaReport {
  std::vector<LemmaCheck> rows;
  bool passed() const;
};

/// Items 1-3 of the interval lemma for k = 1..k_max, exactly in Q(sqrt 2). Item 3 is
/// checked on the full grid when it has at most `full_grid_limit` points and on a
/// fixed pseudo-random sample of that size otherwise.
BadLemmaReport check_bad_lemmas(const LinearCandidate& c, int k_max, std::size_t full_grid_limit = 20000);

/// Psi^q at a point with Q(sqrt 2) coordinates.
QuadraticNumber bad_big_psi(const LinearCandidate& c, int q, const std::vector<QuadraticNumber>& x);

struct CollisionWitness {
  std::vector<QuadraticNumber> x1;
  std::vector<QuadraticNumber> x2;
  QuadraticNumber value1;
  QuadraticNumber value2;
  /// Level-1 box of each point as the d of each coordinate's interval (std::nullopt in a gap).
  std::vector<std::optional<Rational>> box1;
  std::vector<std::optional<Rational>> box2;
  bool same_box = false;
};

/// x1 = (0, sqrt2/4) and x2 = (1/2, 0): equal images 1/2 under Psi^0, different boxes.
CollisionWitness collision_witness(const LinearCandidate& c);

}  // namespace kolmo
