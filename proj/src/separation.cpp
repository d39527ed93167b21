#include "kolmo/separation.hpp"

#include "kolmo/inner_builder.hpp"
#include "kolmo/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kolmo {

Rational diameter_envelope(int level) {
  return max(Rational(2) * pow(rat(3, 4), static_cast<unsigned>(level)), pow2(-level));
}

VerificationReport check_criterion(const RefinementState& state) {
  VerificationReport r;
  r.level = state.level;
  r.max_diameter = Rational(0);
  for (const Town& t : state.towns) r.max_diameter = max(r.max_diameter, t.length());
  r.diameter_target = diameter_envelope(state.level);
  if (r.max_diameter > r.diameter_target) {
    r.diameter_ok = false;
    r.failures.push_back({"diameter", "max diameter " + r.max_diameter.str() + " exceeds " + r.diameter_target.str()});
  }

  r.min_coverage = min_coverage(state);
  if (r.min_coverage < 2 * state.n) {
    r.coverage_ok = false;
    r.failures.push_back({"coverage", "some x in [0,1] is covered by only " + std::to_string(r.min_coverage) +
                                          " of " + std::to_string(2 * state.n + 1) + " families"});
  }

  std::optional<Rational> gap;
  for (std::size_t i = 0; i + 1 < state.towns.size(); ++i) {
    const Town& a = state.towns[i];
    const Town& b = state.towns[i + 1];
    if (!(a.end < b.start)) {
      r.monotone = false;
      r.failures.push_back({"order", "towns " + std::to_string(i) + " and " + std::to_string(i + 1) + " overlap"});
    }
    const Rational d = b.value - a.value;
    if (d.sign() <= 0) {
      r.monotone = false;
      r.image_separation_ok = false;
      r.failures.push_back({"monotone", "towns " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                            " have values " + a.value.str() + ", " + b.value.str()});
    }
    if (!gap || d < *gap) gap = d;
  }
  r.min_image_gap = BigFloat(gap.value_or(Rational(0)), Round::Down);

  r.lipschitz = from_state(state).lipschitz_constant();
  if (r.lipschitz > state.slope_cap()) {
    r.slope_cap_ok = false;
    r.failures.push_back({"lipschitz", "slope " + r.lipschitz.str() + " exceeds cap " + state.slope_cap().str()});
  }
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "fail";
}

std::vector<BigInterval> default_lambdas(int n) {
  std::vector<BigInterval> out;
  for (int p = 1; p <= n; ++p) {
    const auto num = static_cast<unsigned long>(p - 1);
    const auto den = static_cast<unsigned long>(n);
    out.push_back({BigFloat::pow2_fraction(num, den, Round::Down), BigFloat::pow2_fraction(num, den, Round::Up)});
  }
  return out;
}

namespace {

struct Image {
  BigFloat lo;
  BigFloat hi;
};

/// Smallest gap between consecutive sorted images, measured against the running
/// maximum of upper ends. Empty images (lo > hi) are ignored.
std::optional<BigFloat> min_gap_of(std::vector<Image>& imgs) {
  std::erase_if(imgs, [](const Image& im) { return im.hi < im.lo; });
  std::sort(imgs.begin(), imgs.end(), [](const Image& a, const Image& b) { return a.lo < b.lo; });
  std::optional<BigFloat> best;
  for (std::size_t i = 1; i < imgs.size(); ++i) {
    if (imgs[i - 1].hi > imgs[i].hi) imgs[i].hi = imgs[i - 1].hi;
    BigFloat g = BigFloat::sub(imgs[i].lo, imgs[i - 1].hi, Round::Down);
    if (!best || g < *best) best = std::move(g);
  }
  return best;
}

std::optional<Rational> exact_min_gap(std::vector<Interval>& imgs) {
  std::sort(imgs.begin(), imgs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::optional<Rational> best;
  for (std::size_t i = 1; i < imgs.size(); ++i) {
    if (imgs[i - 1].hi > imgs[i].hi) imgs[i].hi = imgs[i - 1].hi;
    Rational g = imgs[i].lo - imgs[i - 1].hi;
    if (!best || g < *best) best = std::move(g);
  }
  return best;
}

}  // namespace

CubeSeparation check_cube_separation(const std::vector<RefinementState>& states, const std::vector<BigInterval>& lambdas,
                                     int at_level, const BigFloat& tail) {
  if (states.empty()) throw std::invalid_argument("no states");
  const RefinementState& deep = states.back();
  if (at_level < 0 || at_level > deep.level || static_cast<std::size_t>(at_level) >= states.size()) {
    throw std::invalid_argument("at_level outside the built range");
  }
  const int n = deep.n;
  if (static_cast<int>(lambdas.size()) != n) throw std::invalid_argument("need one lambda per coordinate");
  const RefinementState& level_state = states[static_cast<std::size_t>(at_level)];

  BigFloat lam_norm;
  for (const auto& l : lambdas) lam_norm = BigFloat::add(lam_norm, l.hi, Round::Up);
  const BigFloat widen = BigFloat::mul(BigFloat::mul(lam_norm, tail, Round::Up), BigFloat(static_cast<long>(n)), Round::Up);

  bool exact = true;
  std::vector<Rational> exact_lambda;
  for (const auto& l : lambdas) {
    exact = exact && l.lo == l.hi;
    if (exact) exact_lambda.push_back(to_rational(l.lo));
  }
  bool exact_overlap = false;

  CubeSeparation out;
  out.level = at_level;
  std::optional<BigFloat> raw_gap;
  std::optional<BigFloat> wide_gap;
  std::optional<BigFloat> shrunk_gap;
  for (int q = 0; q <= 2 * n; ++q) {
    const Rational frame_lo = -(deep.epsilon * Rational(q));
    const Rational frame_hi = Rational(1) + frame_lo;
    std::vector<Rational> left;
    std::vector<Rational> right;
    for (const Town& t : level_state.towns) {
      const Rational a = max(t.start, frame_lo);
      const Rational b = min(t.end, frame_hi);
      if (a > b) continue;
      left.push_back(psi_value(deep.towns, a));
      right.push_back(psi_value(deep.towns, b));
    }
    const std::size_t m = left.size();
    if (m == 0) continue;
    // Outer (lo down, hi up) and inner (lo up, hi down) enclosures per coordinate.
    std::vector<std::vector<BigFloat>> out_lo(n), out_hi(n), in_lo(n), in_hi(n);
    for (int p = 0; p < n; ++p) {
      for (std::size_t i = 0; i < m; ++i) {
        out_lo[p].push_back(BigFloat::mul(lambdas[p].lo, BigFloat(left[i], Round::Down), Round::Down));
        out_hi[p].push_back(BigFloat::mul(lambdas[p].hi, BigFloat(right[i], Round::Up), Round::Up));
        in_lo[p].push_back(BigFloat::mul(lambdas[p].hi, BigFloat(left[i], Round::Up), Round::Up));
        in_hi[p].push_back(BigFloat::mul(lambdas[p].lo, BigFloat(right[i], Round::Down), Round::Down));
      }
    }
    std::vector<std::vector<Rational>> ex_lo(exact ? n : 0), ex_hi(exact ? n : 0);
    for (int p = 0; p < n && exact; ++p) {
      for (std::size_t i = 0; i < m; ++i) {
        ex_lo[p].push_back(exact_lambda[p] * left[i]);
        ex_hi[p].push_back(exact_lambda[p] * right[i]);
      }
    }
    std::size_t count = 1;
    for (int p = 0; p < n; ++p) count *= m;
    std::vector<Image> raw;
    std::vector<Image> shrunk;
    std::vector<Interval> exact_imgs;
    raw.reserve(count);
    shrunk.reserve(count);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < count; ++c) {
      BigFloat lo;
      BigFloat hi;
      BigFloat ilo;
      BigFloat ihi;
      for (int p = 0; p < n; ++p) {
        lo = BigFloat::add(lo, out_lo[p][idx[p]], Round::Down);
        hi = BigFloat::add(hi, out_hi[p][idx[p]], Round::Up);
        ilo = BigFloat::add(ilo, in_lo[p][idx[p]], Round::Up);
        ihi = BigFloat::add(ihi, in_hi[p][idx[p]], Round::Down);
      }
      raw.push_back({std::move(lo), std::move(hi)});
      shrunk.push_back({BigFloat::add(ilo, widen, Round::Up), BigFloat::sub(ihi, widen, Round::Down)});
      if (exact) {
        Interval e{Rational(0), Rational(0)};
        for (int p = 0; p < n; ++p) {
          e.lo += ex_lo[p][idx[p]];
          e.hi += ex_hi[p][idx[p]];
        }
        exact_imgs.push_back(std::move(e));
      }
      for (int p = 0; p < n && ++idx[p] == m; ++p) idx[p] = 0;
    }
    if (exact && widen.is_zero()) {
      if (auto g = exact_min_gap(exact_imgs); g && g->sign() <= 0 && !exact_overlap) {
        exact_overlap = true;
        out.detail = "q=" + std::to_string(q) + ": cube images meet (exact gap " + g->str() + ")";
      }
    }
    out.cubes += count;
    if (auto g = min_gap_of(raw)) {
      if (!raw_gap || *g < *raw_gap) raw_gap = *g;
      BigFloat w = BigFloat::sub(*g, ldexp(widen, 1), Round::Down);
      if (!wide_gap || w < *wide_gap) wide_gap = std::move(w);
    }
    if (auto g = min_gap_of(shrunk)) {
      if ((!shrunk_gap || *g < *shrunk_gap) && g->sign() <= 0 && out.detail.empty()) {
        out.detail = "q=" + std::to_string(q) + ": cube images overlap by " + (-*g).str(6);
      }
      if (!shrunk_gap || *g < *shrunk_gap) shrunk_gap = *g;
    }
  }
  if (raw_gap) {
    out.min_gap = *raw_gap;
    out.widened_min_gap = *wide_gap;
  } else {
    out.min_gap = BigFloat(std::numeric_limits<double>::infinity());
    out.widened_min_gap = out.min_gap;
  }
  if (exact_overlap || (shrunk_gap && shrunk_gap->sign() <= 0)) {
    out.verdict = Verdict::Fail;
  } else if (out.widened_min_gap.sign() <= 0) {
    out.verdict = Verdict::Inconclusive;
    out.detail = "tail widening swamps the smallest image gap";
  }
  return out;
}

ConvergenceReport check_convergence(const std::vector<RefinementState>& states) {
  ConvergenceReport r;
  std::vector<RationalPL> psi;
  psi.reserve(states.size());
  for (const auto& s : states) psi.push_back(from_state(s));
  for (std::size_t j = 0; j + 1 < psi.size(); ++j) r.sup_diffs.push_back(sup_diff(psi[j + 1], psi[j]));
  for (std::size_t j = 1; j < r.sup_diffs.size(); ++j) {
    if (r.sup_diffs[j - 1].is_zero()) continue;
    r.ratios.push_back(r.sup_diffs[j] / r.sup_diffs[j - 1]);
    if (!r.max_ratio || r.ratios.back() > *r.max_ratio) r.max_ratio = r.ratios.back();
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t j = 0; j < r.sup_diffs.size(); ++j) {
    if (r.sup_diffs[j].is_zero()) continue;
    const double x = static_cast<double>(j);
    const double y = std::log(r.sup_diffs[j].to_double());
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) r.fitted_rate = std::exp((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
  return r;
}

std::optional<Rational> extrapolated_tail(const ConvergenceReport& report) {
  if (report.sup_diffs.empty()) return Rational(0);
  if (report.sup_diffs.back().is_zero()) return Rational(0);
  if (report.ratios.empty()) return std::nullopt;
  const std::size_t k = std::min<std::size_t>(3, report.ratios.size());
  Rational theta = Rational(0);
  for (std::size_t i = report.ratios.size() - k; i < report.ratios.size(); ++i) theta = max(theta, report.ratios[i]);
  if (theta >= Rational(1)) return std::nullopt;
  return report.sup_diffs.back() * theta / (Rational(1) - theta);
}

}  // namespace kolmo
