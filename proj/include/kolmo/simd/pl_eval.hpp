#pragma once

#include "kolmo/piecewise_linear.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace kolmo::simd {

/// Double-precision copy of a piecewise-linear table, for fast batch sampling
/// (plots and previews only; exact work stays in Rational).
struct PlTable {
  std::vector<double> xs;
  std::vector<double> ys;

  static PlTable from(const RationalPL& f);
};

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

bool avx2_available();

/// AVX2 when the CPU has it, unless KOLMO_SIMD=scalar is set.
Backend active_backend();

void eval_scalar(const PlTable& t, const double* x, double* out, std::size_t count);
void eval_avx2(const PlTable& t, const double* x, double* out, std::size_t count);

/// Dispatches to the active backend. Both backends return bit-identical results.
void eval_batch(const PlTable& t, const double* x, double* out, std::size_t count);

std::vector<double> eval_batch(const PlTable& t, const std::vector<double>& x);

}  // namespace kolmo::simd
