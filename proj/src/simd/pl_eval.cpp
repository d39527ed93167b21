#include "kolmo/simd/pl_eval.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kolmo::simd {

PlTable PlTable::from(const RationalPL& f) {
  PlTable t;
  for (const auto& k : f.knots()) {
    t.xs.push_back(k.x.to_double());
    t.ys.push_back(k.y.to_double());
  }
  return t;
}

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
}

Backend active_backend() {
  if (const char* env = std::getenv("KOLMO_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Backend::Scalar;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

void eval_scalar(const PlTable& t, const double* x, double* out, std::size_t count) {
  const std::size_t n = t.xs.size();
  if (n == 0) throw std::invalid_argument("empty table");
  const double* xs = t.xs.data();
  const double* ys = t.ys.data();
  for (std::size_t k = 0; k < count; ++k) {
    const double v = x[k];
    if (n == 1 || v <= xs[0]) {
      out[k] = ys[0];
      continue;
    }
    if (v >= xs[n - 1]) {
      out[k] = ys[n - 1];
      continue;
    }
    std::size_t lo = 0;
    std::size_t len = n - 1;
    while (len > 1) {
      const std::size_t half = len / 2;
      lo = xs[lo + half] <= v ? lo + half : lo;
      len -= half;
    }
    const double x0 = xs[lo];
    const double x1 = xs[lo + 1];
    const double y0 = ys[lo];
    const double y1 = ys[lo + 1];
    out[k] = y0 + (y1 - y0) * ((v - x0) / (x1 - x0));
  }
}

void eval_batch(const PlTable& t, const double* x, double* out, std::size_t count) {
  if (active_backend() == Backend::Avx2) {
    eval_avx2(t, x, out, count);
  } else {
    eval_scalar(t, x, out, count);
  }
}

std::vector<double> eval_batch(const PlTable& t, const std::vector<double>& x) {
  std::vector<double> out(x.size());
  eval_batch(t, x.data(), out.data(), x.size());
  return out;
}

}  // namespace kolmo::simd
