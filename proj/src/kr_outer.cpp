#include "kolmo/kr_outer.hpp"

#include "kolmo/inner_builder.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace kolmo {

namespace {

Rational parse_number(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational::parse(text);
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty() || !std::all_of(frac.begin(), frac.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::invalid_argument("malformed number '" + text + "'");
  }
  const bool negative = !whole.empty() && whole[0] == '-';
  const std::string digits = (whole.empty() || whole == "-" || whole == "+" ? std::string("0") : whole) + frac;
  Rational r = Rational::parse(digits) / pow(Rational(10), static_cast<unsigned>(frac.size()));
  if (negative && r.sign() > 0) r = -r;
  return r;
}

BigInterval enclose_product(const BigInterval& lambda, const Rational& v) {
  if (v.sign() >= 0) {
    return {BigFloat::mul(lambda.lo, BigFloat(v, Round::Down), Round::Down),
            BigFloat::mul(lambda.hi, BigFloat(v, Round::Up), Round::Up)};
  }
  return {BigFloat::mul(lambda.hi, BigFloat(v, Round::Down), Round::Down),
          BigFloat::mul(lambda.lo, BigFloat(v, Round::Up), Round::Up)};
}

void check_q(const Embedding& e, int q) {
  if (q < 0 || q > 2 * e.n) throw std::out_of_range("shift q=" + std::to_string(q) + " outside 0..2n");
}

BigFloat widening(const Embedding& e) {
  BigFloat norm;
  for (const auto& l : e.lambdas) norm = BigFloat::add(norm, l.hi, Round::Up);
  return BigFloat::mul(BigFloat::mul(norm, e.tail_bound, Round::Up), BigFloat(static_cast<long>(e.n)), Round::Up);
}

/// Calls visit(idx) for every multi-index in {0..m-1}^n.
template <class F>
void for_each_index(int n, std::size_t m, F&& visit) {
  if (m == 0) return;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(idx);
    int p = 0;
    for (; p < n && ++idx[p] == m; ++p) idx[p] = 0;
    if (p == n) return;
  }
}

/// table[q][p][i] = lambda_p * psi(coords[i] - q eps).
std::vector<std::vector<std::vector<BigFloat>>> axis_table(const Embedding& e, const std::vector<Rational>& coords) {
  std::vector<BigFloat> lam;
  for (const auto& l : e.lambdas) lam.push_back(l.mid());
  std::vector<std::vector<std::vector<BigFloat>>> table(static_cast<std::size_t>(2 * e.n + 1));
  for (int q = 0; q <= 2 * e.n; ++q) {
    auto& tq = table[static_cast<std::size_t>(q)];
    tq.resize(static_cast<std::size_t>(e.n));
    const Rational shift = e.epsilon * Rational(q);
    std::vector<BigFloat> psi_vals;
    for (const Rational& c : coords) psi_vals.emplace_back(e.psi.eval(c - shift));
    for (int p = 0; p < e.n; ++p) {
      for (const BigFloat& v : psi_vals) tq[static_cast<std::size_t>(p)].push_back(lam[static_cast<std::size_t>(p)] * v);
    }
  }
  return table;
}

BigFloat sum_chi(const std::vector<BigPL>& chi, const std::vector<std::vector<std::vector<BigFloat>>>& table,
                 const std::vector<std::size_t>& idx) {
  BigFloat s;
  for (std::size_t q = 0; q < chi.size(); ++q) {
    BigFloat y;
    for (std::size_t p = 0; p < idx.size(); ++p) y += table[q][p][idx[p]];
    s += chi[q].eval(y);
  }
  return s;
}

}  // namespace

Embedding Embedding::from_state(const RefinementState& deepest, const BigFloat& tail_bound) {
  Embedding e;
  e.n = deepest.n;
  e.epsilon = deepest.epsilon;
  e.lambdas = default_lambdas(deepest.n);
  e.psi = kolmo::from_state(deepest);
  e.tail_bound = tail_bound;
  return e;
}

BigFloat big_psi(const Embedding& e, int q, const Point& x) {
  check_q(e, q);
  if (static_cast<int>(x.size()) != e.n) throw std::invalid_argument("point dimension differs from n");
  const Rational shift = e.epsilon * Rational(q);
  BigFloat s;
  for (int p = 0; p < e.n; ++p) {
    s += e.lambdas[static_cast<std::size_t>(p)].mid() * BigFloat(e.psi.eval(x[static_cast<std::size_t>(p)] - shift));
  }
  return s;
}

BigInterval big_psi_enclosure(const Embedding& e, int q, const Point& x) {
  check_q(e, q);
  if (static_cast<int>(x.size()) != e.n) throw std::invalid_argument("point dimension differs from n");
  const Rational shift = e.epsilon * Rational(q);
  BigInterval s{BigFloat(), BigFloat()};
  for (int p = 0; p < e.n; ++p) {
    const auto t = enclose_product(e.lambdas[static_cast<std::size_t>(p)], e.psi.eval(x[static_cast<std::size_t>(p)] - shift));
    s.lo = BigFloat::add(s.lo, t.lo, Round::Down);
    s.hi = BigFloat::add(s.hi, t.hi, Round::Up);
  }
  return s;
}

BigInterval cube_image(const Embedding& e, int q, const std::vector<Interval>& cube) {
  check_q(e, q);
  if (static_cast<int>(cube.size()) != e.n) throw std::invalid_argument("cube dimension differs from n");
  BigInterval s{BigFloat(), BigFloat()};
  for (int p = 0; p < e.n; ++p) {
    const auto& lam = e.lambdas[static_cast<std::size_t>(p)];
    s.lo = BigFloat::add(s.lo, enclose_product(lam, e.psi.eval(cube[static_cast<std::size_t>(p)].lo)).lo, Round::Down);
    s.hi = BigFloat::add(s.hi, enclose_product(lam, e.psi.eval(cube[static_cast<std::size_t>(p)].hi)).hi, Round::Up);
  }
  const BigFloat w = widening(e);
  return {BigFloat::sub(s.lo, w, Round::Down), BigFloat::add(s.hi, w, Round::Up)};
}

TestFunction make_test_function(const std::string& spec, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  TestFunction f;
  f.name = spec;
  f.n = n;
  if (spec.rfind("const:", 0) == 0) {
    const Rational c = parse_number(spec.substr(6));
    f.eval = [c](const Point&) { return c; };
    f.lipschitz = Rational(0);
  } else if (spec == "sum") {
    f.eval = [](const Point& x) {
      Rational s(0);
      for (const auto& v : x) s += v;
      return s;
    };
    f.lipschitz = Rational(n);
  } else if (spec == "product") {
    f.eval = [](const Point& x) {
      Rational s(1);
      for (const auto& v : x) s *= v;
      return s;
    };
    f.lipschitz = Rational(n);
  } else if (spec == "runge2d") {
    if (n != 2) throw std::invalid_argument("runge2d needs n = 2");
    f.eval = [](const Point& x) { return Rational(1) / (Rational(1) + Rational(25) * (x[0] * x[0] + x[1] * x[1])); };
    f.lipschitz = Rational(5);
  } else {
    throw std::invalid_argument("unknown test function '" + spec + "' (const:c, sum, product, runge2d)");
  }
  return f;
}

Rational max_cube_side(const RefinementState& state) {
  Rational best(0);
  for (int q = 0; q <= 2 * state.n; ++q) {
    const Rational lo = -(state.epsilon * Rational(q));
    const Rational hi = Rational(1) + lo;
    for (const Town& t : state.towns) {
      const Rational a = max(t.start, lo);
      const Rational b = min(t.end, hi);
      if (a < b) best = max(best, b - a);
    }
  }
  return best;
}

int min_cube_coverage(const RefinementState& state) {
  const std::vector<unsigned> masks = coverage_masks(state);
  int best = 2 * state.n + 1;
  for_each_index(state.n, masks.size(), [&](const std::vector<std::size_t>& idx) {
    unsigned m = ~0U;
    for (std::size_t i : idx) m &= masks[i];
    best = std::min(best, std::popcount(m));
  });
  return best;
}

BigFloat grid_error(const TestFunction& f, const Embedding& e, const std::vector<BigPL>& chi, int grid) {
  if (grid < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  std::vector<Rational> coords;
  for (int i = 0; i < grid; ++i) coords.push_back(rat(i, grid - 1));
  const auto table = axis_table(e, coords);
  BigFloat worst;
  Point x(static_cast<std::size_t>(e.n));
  for_each_index(e.n, coords.size(), [&](const std::vector<std::size_t>& idx) {
    for (std::size_t p = 0; p < idx.size(); ++p) x[p] = coords[idx[p]];
    const BigFloat err = abs(BigFloat(f.eval(x)) - sum_chi(chi, table, idx));
    if (worst < err) worst = err;
  });
  return worst;
}

OuterState initial_outer_state(const TestFunction& f, const Embedding& e, const OuterOptions& opts) {
  if (f.n != e.n) throw std::invalid_argument("test function dimension differs from the embedding");
  OuterState s;
  s.r = 0;
  s.chi.assign(static_cast<std::size_t>(2 * e.n + 1), BigPL::constant(BigFloat()));
  s.M = grid_error(f, e, s.chi, opts.grid);
  s.j_r = 0;
  s.min_cube_coverage = 2 * e.n + 1;
  return s;
}

OuterState outer_round(const TestFunction& f, const Embedding& e, const std::vector<RefinementState>& states,
                       const OuterState& prev, const OuterOptions& opts, SeparationCache* cache) {
  if (states.empty()) throw std::invalid_argument("no states");
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (states[j].level != static_cast<int>(j)) throw std::invalid_argument("states must be levels 0..J in order");
  }
  if (f.n != e.n) throw std::invalid_argument("test function dimension differs from the embedding");
  if (prev.chi.size() != static_cast<std::size_t>(2 * e.n + 1)) throw std::invalid_argument("outer state has wrong family count");
  const int n = e.n;
  const int J = states.back().level;

  OuterState next = prev;
  next.r = prev.r + 1;
  if (prev.M.is_zero()) return next;

  const Rational L_prev = prev.r == 0 ? Rational(0) : f.lipschitz;
  const BigFloat budget = BigFloat::div(prev.M, BigFloat(static_cast<long>(2 * n + 2)), Round::Down);
  const BigFloat root_n = BigFloat::sqrt(BigFloat(static_cast<long>(n)), Round::Up);
  int candidate = -1;
  for (int j = 0; j <= J && candidate < 0; ++j) {
    const BigFloat lhs = BigFloat::mul(root_n, BigFloat((f.lipschitz + L_prev) * max_cube_side(states[static_cast<std::size_t>(j)]), Round::Up), Round::Up);
    if (lhs <= budget) candidate = j;
  }
  if (candidate < 0) {
    throw DeeperPsiRequired("no level up to " + std::to_string(J) + " meets the oscillation bound " + budget.str(6));
  }
  int level = -1;
  for (int j = candidate; j <= J && level < 0; ++j) {
    Verdict v;
    if (cache != nullptr && cache->count(j) != 0) {
      v = cache->at(j);
    } else {
      v = check_cube_separation(states, e.lambdas, j, e.tail_bound).verdict;
      if (cache != nullptr) (*cache)[j] = v;
    }
    if (v == Verdict::Pass) level = j;
  }
  if (level < 0) {
    throw DeeperPsiRequired("cube images are not separated at any level from " + std::to_string(candidate) + " to " +
                            std::to_string(J));
  }
  next.j_r = level;

  const RefinementState& cubes = states[static_cast<std::size_t>(level)];
  const BigFloat w = widening(e);
  const BigFloat cap = BigFloat::div(prev.M, BigFloat(static_cast<long>(n + 1)), Round::Down);
  const BigFloat n1(static_cast<long>(n + 1));
  std::vector<BigFloat> lam;
  for (const auto& l : e.lambdas) lam.push_back(l.mid());

  for (int q = 0; q <= 2 * n; ++q) {
    const Rational shift = e.epsilon * Rational(q);
    const Rational frame_lo = -shift;
    const Rational frame_hi = Rational(1) - shift;
    std::vector<BigFloat> left, right;
    std::vector<Rational> centers;
    for (const Town& t : cubes.towns) {
      const Rational a = max(t.start, frame_lo);
      const Rational b = min(t.end, frame_hi);
      if (a > b) continue;
      left.emplace_back(e.psi.eval(a));
      right.emplace_back(e.psi.eval(b));
      centers.push_back(midpoint(a, b) + shift);
    }
    const auto table = axis_table(e, centers);

    struct Piece {
      BigFloat lo, hi, c;
    };
    std::vector<Piece> pieces;
    Point xi(static_cast<std::size_t>(n));
    for_each_index(n, centers.size(), [&](const std::vector<std::size_t>& idx) {
      BigFloat lo, hi;
      for (int p = 0; p < n; ++p) {
        const auto pp = static_cast<std::size_t>(p);
        lo += lam[pp] * left[idx[pp]];
        hi += lam[pp] * right[idx[pp]];
        xi[pp] = centers[idx[pp]];
      }
      BigFloat c = (BigFloat(f.eval(xi)) - sum_chi(prev.chi, table, idx)) / n1;
      c = max(-cap, min(cap, c));
      pieces.push_back({lo - w, hi + w, std::move(c)});
    });
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    std::vector<BigPL::Knot> knots;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (i > 0 && !(pieces[i - 1].hi < pieces[i].lo)) {
        throw DeeperPsiRequired("cube images meet at level " + std::to_string(level) + " for q=" + std::to_string(q));
      }
      knots.push_back({pieces[i].lo, pieces[i].c});
      if (pieces[i].lo < pieces[i].hi) knots.push_back({pieces[i].hi, pieces[i].c});
    }
    if (knots.empty()) continue;
    next.chi[static_cast<std::size_t>(q)] = prev.chi[static_cast<std::size_t>(q)] + BigPL(std::move(knots));
  }

  next.M = grid_error(f, e, next.chi, opts.grid);
  next.min_cube_coverage = min_cube_coverage(cubes);
  return next;
}

BigFloat kr_eval(const Embedding& e, const OuterState& outer, const Point& x) {
  BigFloat s;
  for (int q = 0; q <= 2 * e.n; ++q) s += outer.chi[static_cast<std::size_t>(q)].eval(big_psi(e, q, x));
  return s;
}

}  // namespace kolmo
