#include "kolmo/inner_builder.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace kolmo {

std::string ext_str(const ExtRational& v) { return v ? v->str() : "inf"; }

namespace {

using RationalSet = std::set<Rational>;

RationalSet endpoint_set(const std::vector<Town>& towns) {
  RationalSet out;
  for (const Town& t : towns) {
    out.insert(t.start);
    out.insert(t.end);
  }
  return out;
}

void add_copies(RationalSet& taken, const Rational& p, const RefinementState& s) {
  for (int k = -4 * s.n; k <= 4 * s.n; ++k) taken.insert(p + s.epsilon * Rational(k));
}

bool conflicts(const RefinementState& s, const Rational& p, const RationalSet& taken, const RationalSet& endpoints) {
  // (a) a shifted copy of p meets a shifted copy of an earlier break point
  if (taken.count(p) != 0) return true;
  // (b) a shifted copy lands on a town endpoint; this also covers (c), since
  // rho_plus or rho_minus vanish only at an endpoint
  for (int q = -2 * s.n; q <= 2 * s.n; ++q) {
    if (endpoints.count(p - s.epsilon * Rational(q)) != 0) return true;
  }
  return false;
}

Rational choose_with(const RefinementState& s, std::size_t idx, const RationalSet& taken, const RationalSet& endpoints,
                     const BuildOptions& opts) {
  const Town& t = s.towns.at(idx);
  const Rational len = t.length();
  const Rational mid = midpoint(t.start, t.end);
  if (!conflicts(s, mid, taken, endpoints)) return mid;
  const Rational sgn = mid.sign() >= 0 ? Rational(1) : Rational(-1);
  for (int e = 4; e <= opts.max_perturbation_depth; ++e) {
    const Rational step = len * pow2(-e);
    for (const Rational& p : {mid + sgn * step, mid - sgn * step}) {
      if (!conflicts(s, p, taken, endpoints)) return p;
    }
  }
  throw BuildError(s.level + 1, "no conflict-free break point for town " + std::to_string(idx) + " [" +
                                    t.start.str() + ", " + t.end.str() + "] within the perturbation budget");
}

std::vector<Town> merged(const std::vector<Town>& towns, const std::vector<Town>& extra) {
  std::vector<Town> out(towns);
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end(), [](const Town& a, const Town& b) { return a.start < b.start; });
  return out;
}

}  // namespace

std::vector<std::size_t> select_breakables(const RefinementState& state, const BuildOptions& opts) {
  const Rational threshold = pow(opts.theta, static_cast<unsigned>(state.level + 1));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < state.towns.size(); ++i) {
    if (state.towns[i].length() >= threshold) out.push_back(i);
  }
  return out;
}

Rational choose_breakpoint(const RefinementState& state, std::size_t town_index, const std::vector<Rational>& prior,
                           const BuildOptions& opts) {
  RationalSet taken;
  for (const Rational& p : prior) add_copies(taken, p, state);
  return choose_with(state, town_index, taken, endpoint_set(state.towns), opts);
}

Rational psi_value(const std::vector<Town>& towns, const Rational& x) {
  const Location loc = locate(towns, x);
  switch (loc.kind) {
    case Location::Kind::Town:
      return towns[loc.index].value;
    case Location::Kind::Hole: {
      const Town& a = towns[loc.index];
      const Town& b = towns[loc.index + 1];
      return a.value + (b.value - a.value) * (x - a.end) / (b.start - a.end);
    }
    case Location::Kind::Outside:
      break;
  }
  return x < towns.front().start ? towns.front().value : towns.back().value;
}

std::vector<Hole> find_holes(const RefinementState& state, const std::vector<Rational>& breakpoints) {
  std::map<std::size_t, Hole> holes;
  for (const Rational& p : breakpoints) {
    for (int q = -2 * state.n; q <= 2 * state.n; ++q) {
      Rational x = p - state.epsilon * Rational(q);
      if (x < Rational(-1) || x > Rational(1)) continue;
      const Location loc = locate(state.towns, x);
      if (loc.kind != Location::Kind::Hole) continue;
      Hole& h = holes[loc.index];
      h.left_index = loc.index;
      h.left_end = state.towns[loc.index].end;
      h.right_end = state.towns[loc.index + 1].start;
      h.shifted_points.push_back({p, q, std::move(x)});
    }
  }
  std::vector<Hole> out;
  for (auto& [_, h] : holes) {
    std::sort(h.shifted_points.begin(), h.shifted_points.end(),
              [](const ShiftedPoint& a, const ShiftedPoint& b) { return a.x < b.x; });
    h.shifted_points.erase(std::unique(h.shifted_points.begin(), h.shifted_points.end()), h.shifted_points.end());
    out.push_back(std::move(h));
  }
  return out;
}

PlugSystem assemble_plug_system(const Hole& hole, const Rational& f_left, const Rational& f_right,
                                const std::vector<Rational>& f, const Rational& m_hat) {
  const std::size_t nu = hole.shifted_points.size();
  const std::size_t dim = 2 * nu;
  PlugSystem sys;
  sys.C.assign(dim, std::vector<Rational>(dim, Rational(0)));
  sys.z.assign(dim, Rational(0));
  auto a = [](std::size_t i) { return 2 * (i - 1); };
  auto b = [](std::size_t i) { return 2 * (i - 1) + 1; };
  auto fv = [&](std::size_t i) -> const Rational& { return i == 0 ? f_left : (i == nu + 1 ? f_right : f[i - 1]); };
  for (std::size_t i = 1; i <= nu + 1; ++i) {
    auto& row = sys.C[i - 1];
    Rational rhs = fv(i) - fv(i - 1);
    if (i <= nu) row[a(i)] += m_hat;
    else rhs -= m_hat * hole.right_end;
    if (i >= 2) row[b(i - 1)] -= m_hat;
    else rhs += m_hat * hole.left_end;
    sys.z[i - 1] = rhs;
  }
  for (std::size_t i = 1; i + 1 <= nu; ++i) {
    auto& row = sys.C[nu + i];
    row[b(i)] = Rational(1);
    row[a(i + 1)] = Rational(1);
    sys.z[nu + i] = hole.shifted_points[i - 1].x + hole.shifted_points[i].x;
  }
  return sys;
}

PlugSolution solve_plugs(const Hole& hole, const RefinementState& psi, const Rational& m_hat) {
  const int level = psi.level + 1;
  if (hole.shifted_points.empty()) throw BuildError(level, "hole without shifted points");
  if (m_hat.sign() <= 0) throw BuildError(level, "singular plug system (m_hat <= 0)");
  const std::size_t nu = hole.shifted_points.size();
  const Rational f_left = psi.towns.at(hole.left_index).value;
  const Rational f_right = psi.towns.at(hole.left_index + 1).value;

  PlugSolution sol;
  sol.hole = hole;
  sol.nu = nu;
  sol.m_hat = m_hat;
  for (const ShiftedPoint& sp : hole.shifted_points) sol.values.push_back(psi_value(psi.towns, sp.x));
  sol.endpoints.resize(nu);
  sol.endpoints.front().lo = hole.left_end + (sol.values.front() - f_left) / m_hat;
  sol.endpoints.back().hi = hole.right_end - (f_right - sol.values.back()) / m_hat;
  for (std::size_t i = 0; i + 1 < nu; ++i) {
    const Rational& p0 = hole.shifted_points[i].x;
    const Rational& p1 = hole.shifted_points[i + 1].x;
    const Rational s = ((p1 - p0) - (sol.values[i + 1] - sol.values[i]) / m_hat) / Rational(2);
    sol.endpoints[i].hi = p0 + s;
    sol.endpoints[i + 1].lo = p1 - s;
  }

  Rational prev = hole.left_end;
  for (std::size_t i = 0; i < nu; ++i) {
    const Interval& e = sol.endpoints[i];
    const Rational& ph = hole.shifted_points[i].x;
    if (!(prev < e.lo && e.lo <= ph && ph <= e.hi && e.lo < e.hi)) {
      throw BuildError(level, "plug " + std::to_string(i) + " in hole (" + hole.left_end.str() + ", " +
                                  hole.right_end.str() + ") violates ordering: [" + e.lo.str() + ", " + e.hi.str() +
                                  "] around " + ph.str());
    }
    prev = e.hi;
  }
  if (!(prev < hole.right_end)) throw BuildError(level, "last plug reaches the hole's right end");
  return sol;
}

BreakPlan create_gap(const RefinementState& post_plug, std::size_t town_index, const Rational& p,
                     const std::vector<Rational>& copies) {
  const int level = post_plug.level + 1;
  const auto& towns = post_plug.towns;
  const Town& t = towns.at(town_index);
  BreakPlan plan;
  plan.town_index = town_index;
  plan.p = p;

  for (int q = -2 * post_plug.n; q <= 2 * post_plug.n; ++q) {
    const Rational x = p - post_plug.epsilon * Rational(q);
    if (x < Rational(-1) || x > Rational(1)) continue;
    const Location loc = locate(towns, x);
    if (loc.kind != Location::Kind::Town) {
      throw BuildError(level, "copy " + x.str() + " of break point " + p.str() + " is not covered after plugging");
    }
    const Rational left = x - towns[loc.index].start;
    const Rational right = towns[loc.index].end - x;
    if (!plan.rho_plus || left < *plan.rho_plus) plan.rho_plus = left;
    if (!plan.rho_minus || right < *plan.rho_minus) plan.rho_minus = right;
  }

  auto lo = std::lower_bound(copies.begin(), copies.end(), p);
  if (lo != copies.begin()) plan.delta_plus = p - *(lo - 1);
  auto hi = std::upper_bound(copies.begin(), copies.end(), p);
  if (hi != copies.end()) plan.delta_minus = *hi - p;

  const Rational alpha = rat(2, 3);
  const Rational beta = rat(1, 3);
  std::optional<Rational> rho;
  auto take = [&rho](const ExtRational& v, const Rational& w) {
    if (!v) return;
    Rational c = w * *v;
    if (!rho || c < *rho) rho = std::move(c);
  };
  take(plan.rho_plus, alpha);
  take(plan.rho_minus, alpha);
  take(plan.delta_plus, beta);
  take(plan.delta_minus, beta);
  if (!rho || rho->sign() <= 0) {
    throw BuildError(level, "degenerate gap radius at break point " + p.str() + " of town [" + t.start.str() + ", " +
                                t.end.str() + "]");
  }
  plan.rho = *rho;
  plan.eta = plan.rho;
  if (town_index + 1 < towns.size()) plan.eta = min(plan.rho, (towns[town_index + 1].value - t.value) / Rational(2));
  return plan;
}

RefinementState refine(const RefinementState& state, const BuildOptions& opts, const std::vector<std::size_t>& order,
                       LevelAudit* audit) {
  const int level = state.level + 1;
  const std::vector<std::size_t> breakables = select_breakables(state, opts);

  std::vector<std::size_t> perm(breakables.size());
  std::iota(perm.begin(), perm.end(), 0);
  if (!order.empty()) {
    std::vector<std::size_t> check(order);
    std::sort(check.begin(), check.end());
    if (check != perm) throw std::invalid_argument("processing order is not a permutation of the breakable towns");
    perm = order;
  }

  // Break points are chosen in ascending town order so the level does not depend on `order`.
  std::vector<Rational> points;
  {
    RationalSet taken;
    const RationalSet endpoints = endpoint_set(state.towns);
    for (std::size_t idx : breakables) {
      points.push_back(choose_with(state, idx, taken, endpoints, opts));
      add_copies(taken, points.back(), state);
    }
  }

  std::vector<Hole> holes = find_holes(state, points);
  std::map<Rational, std::size_t> rank_of;
  for (std::size_t r = 0; r < perm.size(); ++r) rank_of[points[perm[r]]] = r;
  std::vector<std::size_t> hole_rank(holes.size(), perm.size());
  for (std::size_t h = 0; h < holes.size(); ++h) {
    for (const ShiftedPoint& sp : holes[h].shifted_points) hole_rank[h] = std::min(hole_rank[h], rank_of.at(sp.p));
  }
  std::vector<std::size_t> hole_order(holes.size());
  std::iota(hole_order.begin(), hole_order.end(), 0);
  std::stable_sort(hole_order.begin(), hole_order.end(),
                   [&](std::size_t x, std::size_t y) { return hole_rank[x] < hole_rank[y]; });

  const Rational m_hat = Rational(1) - pow2(-level);
  std::vector<PlugSolution> plugs(holes.size());
  std::vector<Town> plug_towns;
  for (std::size_t h : hole_order) {
    plugs[h] = solve_plugs(holes[h], state, m_hat);
    for (std::size_t i = 0; i < plugs[h].nu; ++i) {
      plug_towns.push_back(
          {plugs[h].endpoints[i].lo, plugs[h].endpoints[i].hi, plugs[h].values[i], TownOrigin::Plug, level});
    }
  }

  RefinementState post = state;
  post.towns = merged(state.towns, plug_towns);

  std::vector<Rational> copies;
  for (const Rational& p : points) {
    for (int k = -4 * state.n; k <= 4 * state.n; ++k) copies.push_back(p + state.epsilon * Rational(k));
  }
  std::sort(copies.begin(), copies.end());
  copies.erase(std::unique(copies.begin(), copies.end()), copies.end());

  std::vector<BreakPlan> plans(breakables.size());
  std::map<std::size_t, std::size_t> plan_at;
  for (std::size_t k : perm) {
    const Town& t = state.towns[breakables[k]];
    auto it = std::lower_bound(post.towns.begin(), post.towns.end(), t.start,
                               [](const Town& u, const Rational& v) { return u.start < v; });
    const std::size_t post_index = static_cast<std::size_t>(it - post.towns.begin());
    plans[k] = create_gap(post, post_index, points[k], copies);
    plans[k].town_index = breakables[k];
    plan_at[post_index] = k;
  }

  RefinementState next;
  next.n = state.n;
  next.epsilon = state.epsilon;
  next.level = level;
  for (std::size_t i = 0; i < post.towns.size(); ++i) {
    const Town& t = post.towns[i];
    auto it = plan_at.find(i);
    if (it == plan_at.end()) {
      next.towns.push_back(t);
      continue;
    }
    const BreakPlan& plan = plans[it->second];
    next.towns.push_back({t.start, plan.p - plan.rho, t.value, TownOrigin::SplitLeft, level});
    next.towns.push_back({plan.p + plan.rho, t.end, t.value + plan.eta, TownOrigin::SplitRight, level});
  }

  if (audit != nullptr) {
    audit->level = level;
    audit->plugs = std::move(plugs);
    audit->breaks = std::move(plans);
  }
  return next;
}

std::vector<RefinementState> build(int n, const Rational& epsilon, int levels, const BuildOptions& opts,
                                   std::vector<LevelAudit>* audit) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (epsilon.sign() <= 0 || epsilon > rat(1, 2L * n)) {
    throw std::invalid_argument("epsilon " + epsilon.str() + " outside (0, 1/(2n)]");
  }
  if (levels < 0) throw std::invalid_argument("levels must be non-negative");
  if (opts.theta.sign() <= 0 || opts.theta >= Rational(1)) throw std::invalid_argument("theta outside (0, 1)");

  std::vector<RefinementState> states{RefinementState::root(n, epsilon)};
  if (audit != nullptr) audit->clear();
  for (int j = 0; j < levels; ++j) {
    LevelAudit log;
    states.push_back(refine(states.back(), opts, {}, audit != nullptr ? &log : nullptr));
    const auto bad = states.back().validate();
    if (!bad.empty()) throw BuildError(j + 1, "invariant violated: " + bad.front());
    if (audit != nullptr) audit->push_back(std::move(log));
  }
  return states;
}

}  // namespace kolmo
