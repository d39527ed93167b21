#include "kolmo/counterexample.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

namespace kolmo {

namespace {

Rational gamma_pow(const LinearCandidate& c, int k) { return pow(Rational(c.gamma), static_cast<unsigned>(k)); }

Rational interval_length(const LinearCandidate& c, int k) {
  return Rational(c.gamma * c.gamma - 1) / gamma_pow(c, k + 2);
}

mpz_class floor_of(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return out;
}

void check_indices(const LinearCandidate& c, int k, int q) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (q < 0 || q > 2 * c.n) throw std::out_of_range("shift q outside 0..2n");
}

QuadraticNumber alpha_hat(const LinearCandidate& c) {
  QuadraticNumber best = c.alphas.front();
  for (const auto& a : c.alphas) best = std::max(best, a);
  return best;
}

/// lambda^{p,q}_{k,i} = alpha_p (i / gamma^k + q eps), p 0-based.
QuadraticNumber lambda(const LinearCandidate& c, int k, std::size_t p, const mpz_class& i, int q) {
  return c.alphas[p] * QuadraticNumber(Rational(i, 1) / gamma_pow(c, k) + c.epsilon * Rational(q));
}

}  // namespace

std::vector<std::string> LinearCandidate::validate() const {
  std::vector<std::string> bad;
  if (n != 2) bad.push_back("only n = 2 is supported");
  if (gamma < 2 * n + 2) bad.push_back("gamma below 2n+2");
  const Rational g(gamma);
  if (!(Rational(1) / (g * g) < epsilon && epsilon < Rational(1) / g)) bad.push_back("epsilon outside (1/gamma^2, 1/gamma)");
  if (static_cast<int>(alphas.size()) != n) {
    bad.push_back("need one alpha per coordinate");
  } else if (n == 2) {
    // {a0 + b0 r, a1 + b1 r} are independent over Q iff det [a0 b0; a1 b1] != 0
    const Rational det = alphas[0].rational_part() * alphas[1].sqrt2_part() -
                         alphas[0].sqrt2_part() * alphas[1].rational_part();
    if (det.is_zero()) bad.push_back("alphas are rationally dependent");
  }
  return bad;
}

std::vector<BadInterval> bad_intervals(const LinearCandidate& c, int k, int q) {
  check_indices(c, k, q);
  const Rational step = Rational(1) / gamma_pow(c, k);
  const Rational len = interval_length(c, k);
  const Rational shift = c.epsilon * Rational(q);
  const mpz_class first = ceil_of((-shift - len) / step);
  const mpz_class last = floor_of((Rational(1) - shift) / step);
  std::vector<BadInterval> out;
  for (mpz_class i = first; i <= last; ++i) {
    const Rational d = Rational(i, 1) * step;
    const Rational lo = max(d + shift, Rational(0));
    const Rational hi = min(d + shift + len, Rational(1));
    if (lo <= hi) out.push_back({d, {lo, hi}});
  }
  return out;
}

int bad_min_coverage(const LinearCandidate& c, int k) {
  std::vector<std::vector<BadInterval>> fam;
  std::vector<Rational> events{Rational(0), Rational(1)};
  for (int q = 0; q <= 2 * c.n; ++q) {
    fam.push_back(bad_intervals(c, k, q));
    for (const auto& b : fam.back()) {
      events.push_back(b.clipped.lo);
      events.push_back(b.clipped.hi);
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  auto count = [&](const Rational& x) {
    int cnt = 0;
    for (const auto& f : fam) {
      auto it = std::upper_bound(f.begin(), f.end(), x, [](const Rational& v, const BadInterval& b) { return v < b.clipped.lo; });
      if (it != f.begin() && x <= (it - 1)->clipped.hi) ++cnt;
    }
    return cnt;
  };
  int best = 2 * c.n + 1;
  for (std::size_t i = 0; i < events.size(); ++i) {
    best = std::min(best, count(events[i]));
    if (i + 1 < events.size()) best = std::min(best, count(midpoint(events[i], events[i + 1])));
  }
  return best;
}

QuadPL bad_psi_level(const LinearCandidate& c, int k, int p, int q) {
  if (p < 1 || p > c.n) throw std::out_of_range("coordinate p outside 1..n");
  const QuadraticNumber& a = c.alphas[static_cast<std::size_t>(p - 1)];
  std::vector<QuadPL::Knot> knots;
  for (const auto& b : bad_intervals(c, k, q)) {
    const QuadraticNumber v = a * QuadraticNumber(b.d + c.epsilon * Rational(q));
    if (!knots.empty() && knots.back().x == b.clipped.lo) continue;
    knots.push_back({b.clipped.lo, v});
    if (b.clipped.lo < b.clipped.hi) knots.push_back({b.clipped.hi, v});
  }
  return QuadPL(std::move(knots));
}

QuadraticNumber bad_psi_error(const LinearCandidate& c, int k, int p, int q) {
  const QuadPL f = bad_psi_level(c, k, p, q);
  const QuadraticNumber& a = c.alphas[static_cast<std::size_t>(p - 1)];
  std::vector<Rational> xs{Rational(0), Rational(1)};
  for (const auto& kn : f.knots()) xs.push_back(kn.x);
  QuadraticNumber best(Rational(0));
  for (const Rational& x : xs) best = std::max(best, abs(f.eval(x) - a * QuadraticNumber(x)));
  return best;
}

bool BadLemmaReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const LemmaCheck& r) { return r.passed; });
}

BadLemmaReport check_bad_lemmas(const LinearCandidate& c, int k_max, std::size_t full_grid_limit) {
  BadLemmaReport report;
  const QuadraticNumber ahat = alpha_hat(c);
  const auto np = static_cast<std::size_t>(c.n);
  for (int k = 1; k <= k_max; ++k) {
    const mpz_class top = floor_of(gamma_pow(c, k));

    LemmaCheck one;
    one.item = 1;
    one.k = k;
    for (std::size_t p = 0; p < np && one.passed; ++p) {
      const QuadraticNumber expect = c.alphas[p] / QuadraticNumber(gamma_pow(c, k));
      for (int q = 0; q <= 2 * c.n && one.passed; ++q) {
        for (mpz_class i = 0; i < top; ++i) {
          const QuadraticNumber diff = lambda(c, k, p, i + 1, q) - lambda(c, k, p, i, q);
          ++one.checks;
          if (!(quad_sign(diff) > 0 && diff == expect)) {
            one.passed = false;
            one.detail = "p=" + std::to_string(p + 1) + " q=" + std::to_string(q) + " i=" + i.get_str() + ": " + diff.str();
            break;
          }
        }
      }
    }
    report.rows.push_back(one);

    LemmaCheck two;
    two.item = 2;
    two.k = k;
    const QuadraticNumber bound = ahat / QuadraticNumber(gamma_pow(c, k)) - ahat / QuadraticNumber(gamma_pow(c, k + 1));
    for (std::size_t p = 0; p < np && two.passed; ++p) {
      for (int q = 0; q <= 2 * c.n && two.passed; ++q) {
        for (mpz_class i = 0; i < top && two.passed; ++i) {
          const QuadraticNumber base = lambda(c, k, p, i, q);
          for (int j = 1; j < c.gamma; ++j) {
            const QuadraticNumber diff = lambda(c, k + 1, p, i * c.gamma + j, q) - base;
            ++two.checks;
            if (quad_sign(diff) < 0 || diff > bound) {
              two.passed = false;
              two.detail = "p=" + std::to_string(p + 1) + " q=" + std::to_string(q) + " i=" + i.get_str() +
                           " j=" + std::to_string(j) + ": " + diff.str();
              break;
            }
          }
        }
      }
    }
    report.rows.push_back(two);

    LemmaCheck three;
    three.item = 3;
    three.k = k;
    const std::size_t side = top.get_ui() + 1;
    std::size_t total = 1;
    for (std::size_t p = 0; p < np; ++p) total *= side;
    std::vector<std::vector<std::size_t>> grid;
    if (total <= full_grid_limit) {
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<std::size_t> idx(np);
        std::size_t rest = flat;
        for (std::size_t p = 0; p < np; ++p) {
          idx[p] = rest % side;
          rest /= side;
        }
        grid.push_back(std::move(idx));
      }
    } else {
      three.sampled = true;
      std::mt19937_64 rng(0x5eed + static_cast<unsigned>(k));
      std::uniform_int_distribution<std::size_t> pick(0, side - 1);
      std::set<std::vector<std::size_t>> seen;
      while (seen.size() < full_grid_limit) {
        std::vector<std::size_t> idx(np);
        for (auto& v : idx) v = pick(rng);
        seen.insert(std::move(idx));
      }
      grid.assign(seen.begin(), seen.end());
    }
    for (int q = 0; q <= 2 * c.n && three.passed; ++q) {
      std::vector<std::pair<QuadraticNumber, std::size_t>> values;
      values.reserve(grid.size());
      for (std::size_t g = 0; g < grid.size(); ++g) {
        QuadraticNumber s(Rational(0));
        for (std::size_t p = 0; p < np; ++p) s += lambda(c, k, p, mpz_class(static_cast<unsigned long>(grid[g][p])), q);
        values.emplace_back(std::move(s), g);
      }
      std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t i = 1; i < values.size(); ++i) {
        ++three.checks;
        if (values[i].first == values[i - 1].first) {
          three.passed = false;
          three.detail = "q=" + std::to_string(q) + ": two grid points share the value " + values[i].first.str();
          break;
        }
      }
    }
    report.rows.push_back(three);
  }
  return report;
}

QuadraticNumber bad_big_psi(const LinearCandidate& c, int q, const std::vector<QuadraticNumber>& x) {
  if (q < 0 || q > 2 * c.n) throw std::out_of_range("shift q outside 0..2n");
  if (x.size() != c.alphas.size()) throw std::invalid_argument("point dimension differs from n");
  QuadraticNumber s(Rational(0));
  const QuadraticNumber shift(c.epsilon * Rational(q));
  for (std::size_t p = 0; p < x.size(); ++p) s += c.alphas[p] * (x[p] + shift);
  return s;
}

CollisionWitness collision_witness(const LinearCandidate& c) {
  if (c.n != 2) throw std::invalid_argument("the collision witness is for n = 2");
  CollisionWitness w;
  w.x1 = {QuadraticNumber(Rational(0)), QuadraticNumber(Rational(0), rat(1, 4))};
  w.x2 = {QuadraticNumber(rat(1, 2)), QuadraticNumber(Rational(0))};
  w.value1 = bad_big_psi(c, 0, w.x1);
  w.value2 = bad_big_psi(c, 0, w.x2);
  const auto level1 = bad_intervals(c, 1, 0);
  auto box_of = [&](const std::vector<QuadraticNumber>& x) {
    std::vector<std::optional<Rational>> box;
    for (const auto& v : x) {
      std::optional<Rational> hit;
      for (const auto& b : level1) {
        if (QuadraticNumber(b.clipped.lo) <= v && v <= QuadraticNumber(b.clipped.hi)) hit = b.d;
      }
      box.push_back(hit);
    }
    return box;
  };
  w.box1 = box_of(w.x1);
  w.box2 = box_of(w.x2);
  w.same_box = w.box1 == w.box2;
  return w;
}

}  // namespace kolmo
