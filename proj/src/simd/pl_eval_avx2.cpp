#include "kolmo/simd/pl_eval.hpp"

#include <immintrin.h>

#include <stdexcept>

namespace kolmo::simd {

void eval_avx2(const PlTable& t, const double* x, double* out, std::size_t count) {
  const std::size_t n = t.xs.size();
  if (n < 2) {
    eval_scalar(t, x, out, count);
    return;
  }
  const double* xs = t.xs.data();
  const double* ys = t.ys.data();
  const __m256d first_x = _mm256_set1_pd(xs[0]);
  const __m256d last_x = _mm256_set1_pd(xs[n - 1]);
  const __m256d first_y = _mm256_set1_pd(ys[0]);
  const __m256d last_y = _mm256_set1_pd(ys[n - 1]);
  const __m256i one = _mm256_set1_epi64x(1);

  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d v = _mm256_loadu_pd(x + k);
    __m256i lo = _mm256_setzero_si256();
    std::size_t len = n - 1;
    while (len > 1) {
      const std::size_t half = len / 2;
      const __m256i probe = _mm256_add_epi64(lo, _mm256_set1_epi64x(static_cast<long long>(half)));
      const __m256d px = _mm256_i64gather_pd(xs, probe, 8);
      const __m256i take = _mm256_castpd_si256(_mm256_cmp_pd(px, v, _CMP_LE_OQ));
      lo = _mm256_blendv_epi8(lo, probe, take);
      len -= half;
    }
    const __m256i hi = _mm256_add_epi64(lo, one);
    const __m256d x0 = _mm256_i64gather_pd(xs, lo, 8);
    const __m256d x1 = _mm256_i64gather_pd(xs, hi, 8);
    const __m256d y0 = _mm256_i64gather_pd(ys, lo, 8);
    const __m256d y1 = _mm256_i64gather_pd(ys, hi, 8);
    __m256d r = _mm256_add_pd(y0, _mm256_mul_pd(_mm256_sub_pd(y1, y0),
                                                _mm256_div_pd(_mm256_sub_pd(v, x0), _mm256_sub_pd(x1, x0))));
    r = _mm256_blendv_pd(r, last_y, _mm256_cmp_pd(v, last_x, _CMP_GE_OQ));
    r = _mm256_blendv_pd(r, first_y, _mm256_cmp_pd(v, first_x, _CMP_LE_OQ));
    _mm256_storeu_pd(out + k, r);
  }
  if (k < count) eval_scalar(t, x + k, out + k, count - k);
}

}  // namespace kolmo::simd
