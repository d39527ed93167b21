#pragma once

// Slow, independent reference computations used only by the tests.

#include "kolmo/town_system.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <vector>

namespace oracle {

using kolmo::Rational;

inline mpq_class q(const Rational& r) { return r.raw(); }

/// Gauss-Jordan elimination over mpq_class with partial pivot search; nullopt if singular.
inline std::optional<std::vector<mpq_class>> gauss_solve(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const mpq_class f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// Number of q in 0..2n with x - q*eps inside some town, by linear scan.
inline int coverage(const kolmo::RefinementState& s, const mpq_class& x) {
  int count = 0;
  for (int k = 0; k <= 2 * s.n; ++k) {
    const mpq_class y = x - k * q(s.epsilon);
    for (const auto& t : s.towns) {
      if (q(t.start) <= y && y <= q(t.end)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

/// Every shifted endpoint in [0,1], 0 and 1, and midpoints between consecutive ones.
inline std::vector<mpq_class> probe_points(const kolmo::RefinementState& s) {
  std::vector<mpq_class> ev{0, 1};
  for (int k = 0; k <= 2 * s.n; ++k) {
    for (const auto& t : s.towns) {
      for (const mpq_class e : {q(t.start) + k * q(s.epsilon), q(t.end) + k * q(s.epsilon)}) {
        if (0 <= e && e <= 1) ev.push_back(e);
      }
    }
  }
  std::sort(ev.begin(), ev.end());
  ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
  std::vector<mpq_class> out = ev;
  for (std::size_t i = 1; i < ev.size(); ++i) out.push_back((ev[i - 1] + ev[i]) / 2);
  return out;
}

inline int min_coverage(const kolmo::RefinementState& s) {
  int best = 2 * s.n + 1;
  for (const auto& x : probe_points(s)) best = std::min(best, coverage(s, x));
  return best;
}

/// Linear-scan evaluation of the ordered knot list, constant outside.
inline mpq_class pl_eval(const std::vector<std::pair<mpq_class, mpq_class>>& knots, const mpq_class& x) {
  if (x <= knots.front().first) return knots.front().second;
  if (x >= knots.back().first) return knots.back().second;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const auto& [x0, y0] = knots[i - 1];
    const auto& [x1, y1] = knots[i];
    if (x <= x1) return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }
  return knots.back().second;
}

/// psi_j read directly off the towns: plateau on a town, straight line across a hole.
inline std::vector<std::pair<mpq_class, mpq_class>> psi_knots(const kolmo::RefinementState& s) {
  std::vector<std::pair<mpq_class, mpq_class>> k;
  for (const auto& t : s.towns) {
    k.emplace_back(q(t.start), q(t.value));
    k.emplace_back(q(t.end), q(t.value));
  }
  return k;
}

/// Sign of a + b*sqrt(2) from a 1024-bit MPFR evaluation (exact zero only for a = b = 0).
inline int sqrt2_sign(const mpq_class& a, const mpq_class& b) {
  if (a == 0 && b == 0) return 0;
  mpfr_t r, t;
  mpfr_inits2(1024, r, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_sqrt_ui(r, 2, MPFR_RNDN);
  mpfr_mul_q(r, r, b.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(t, a.get_mpq_t(), MPFR_RNDN);
  mpfr_add(r, r, t, MPFR_RNDN);
  const int s = mpfr_sgn(r);
  mpfr_clears(r, t, static_cast<mpfr_ptr>(nullptr));
  return s;
}

}  // namespace oracle
