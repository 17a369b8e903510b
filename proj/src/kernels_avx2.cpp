// Built with -mavx2 (no -mfma) only on x86-64 targets.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace nhssh::kernels::detail {

void avx2_radicand(const double* cos_k, const double* sin_k, std::size_t n,
                   double a, double b, double c, double* re, double* im) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ck = _mm256_loadu_pd(cos_k + j);
    const __m256d sk = _mm256_loadu_pd(sin_k + j);
    _mm256_storeu_pd(re + j, _mm256_add_pd(va, _mm256_mul_pd(vb, ck)));
    _mm256_storeu_pd(im + j, _mm256_mul_pd(vc, sk));
  }
  scalar_radicand(cos_k + j, sin_k + j, n - j, a, b, c, re + j, im + j);
}

void avx2_d_vector(const double* cos_k, const double* sin_k, std::size_t n,
                   const DVectorCoefficients& coeff, DVectorColumns out) {
  const __m256d x0 = _mm256_set1_pd(coeff.x0);
  const __m256d r = _mm256_set1_pd(coeff.r);
  const __m256d xs = _mm256_set1_pd(coeff.xs);
  const __m256d y0 = _mm256_set1_pd(coeff.y0);
  const __m256d yc = _mm256_set1_pd(coeff.yc);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ck = _mm256_loadu_pd(cos_k + j);
    const __m256d sk = _mm256_loadu_pd(sin_k + j);
    _mm256_storeu_pd(out.dx_re + j, _mm256_add_pd(x0, _mm256_mul_pd(r, ck)));
    _mm256_storeu_pd(out.dy_re + j, _mm256_mul_pd(r, sk));
    _mm256_storeu_pd(out.dx_im + j, _mm256_mul_pd(xs, sk));
    _mm256_storeu_pd(out.dy_im + j, _mm256_add_pd(y0, _mm256_mul_pd(yc, ck)));
  }
  const DVectorColumns tail{out.dx_re + j, out.dy_re + j, out.dx_im + j,
                            out.dy_im + j};
  scalar_d_vector(cos_k + j, sin_k + j, n - j, coeff, tail);
}

std::size_t avx2_count_in_disk(const double* cos_t, const double* sin_t,
                               std::size_t n, double radius, double center_x,
                               double disk_radius) {
  const __m256d vr = _mm256_set1_pd(radius);
  const __m256d vcx = _mm256_set1_pd(center_x);
  const __m256d r2 = _mm256_set1_pd(disk_radius * disk_radius);
  // Each lane of a compare mask is all-ones (== -1 as int64) when true.
  __m256i hits = _mm256_setzero_si256();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx =
        _mm256_sub_pd(_mm256_mul_pd(vr, _mm256_loadu_pd(cos_t + j)), vcx);
    const __m256d dy = _mm256_mul_pd(vr, _mm256_loadu_pd(sin_t + j));
    const __m256d d2 =
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d inside = _mm256_cmp_pd(d2, r2, _CMP_LT_OQ);
    hits = _mm256_sub_epi64(hits, _mm256_castpd_si256(inside));
  }
  alignas(32) long long lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), hits);
  const std::size_t vector_hits =
      static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
  return vector_hits + scalar_count_in_disk(cos_t + j, sin_t + j, n - j,
                                            radius, center_x, disk_radius);
}

void avx2_accumulate_abs2(const double* interleaved, std::size_t n,
                          double* density) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo = _mm256_loadu_pd(interleaved + 2 * i);      // z0 z1
    const __m256d hi = _mm256_loadu_pd(interleaved + 2 * i + 4);  // z2 z3
    // hadd gives (|z0|^2, |z2|^2, |z1|^2, |z3|^2)
    const __m256d sums =
        _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
    const __m256d ordered = _mm256_permute4x64_pd(sums, 0xD8);
    _mm256_storeu_pd(density + i,
                     _mm256_add_pd(_mm256_loadu_pd(density + i), ordered));
  }
  scalar_accumulate_abs2(interleaved + 2 * i, n - i, density + i);
}

}  // namespace nhssh::kernels::detail
