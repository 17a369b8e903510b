// Built only on AArch64, where Advanced SIMD is part of the base ISA.
#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace nhssh::kernels::detail {

void neon_radicand(const double* cos_k, const double* sin_k, std::size_t n,
                   double a, double b, double c, double* re, double* im) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t ck = vld1q_f64(cos_k + j);
    const float64x2_t sk = vld1q_f64(sin_k + j);
    vst1q_f64(re + j, vaddq_f64(va, vmulq_f64(vb, ck)));
    vst1q_f64(im + j, vmulq_f64(vc, sk));
  }
  scalar_radicand(cos_k + j, sin_k + j, n - j, a, b, c, re + j, im + j);
}

void neon_d_vector(const double* cos_k, const double* sin_k, std::size_t n,
                   const DVectorCoefficients& coeff, DVectorColumns out) {
  const float64x2_t x0 = vdupq_n_f64(coeff.x0);
  const float64x2_t r = vdupq_n_f64(coeff.r);
  const float64x2_t xs = vdupq_n_f64(coeff.xs);
  const float64x2_t y0 = vdupq_n_f64(coeff.y0);
  const float64x2_t yc = vdupq_n_f64(coeff.yc);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t ck = vld1q_f64(cos_k + j);
    const float64x2_t sk = vld1q_f64(sin_k + j);
    vst1q_f64(out.dx_re + j, vaddq_f64(x0, vmulq_f64(r, ck)));
    vst1q_f64(out.dy_re + j, vmulq_f64(r, sk));
    vst1q_f64(out.dx_im + j, vmulq_f64(xs, sk));
    vst1q_f64(out.dy_im + j, vaddq_f64(y0, vmulq_f64(yc, ck)));
  }
  const DVectorColumns tail{out.dx_re + j, out.dy_re + j, out.dx_im + j,
                            out.dy_im + j};
  scalar_d_vector(cos_k + j, sin_k + j, n - j, coeff, tail);
}

std::size_t neon_count_in_disk(const double* cos_t, const double* sin_t,
                               std::size_t n, double radius, double center_x,
                               double disk_radius) {
  const float64x2_t vr = vdupq_n_f64(radius);
  const float64x2_t vcx = vdupq_n_f64(center_x);
  const float64x2_t r2 = vdupq_n_f64(disk_radius * disk_radius);
  uint64x2_t hits = vdupq_n_u64(0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t dx = vsubq_f64(vmulq_f64(vr, vld1q_f64(cos_t + j)), vcx);
    const float64x2_t dy = vmulq_f64(vr, vld1q_f64(sin_t + j));
    const float64x2_t d2 = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
    // all-ones lanes shifted down to 0/1
    hits = vaddq_u64(hits, vshrq_n_u64(vcltq_f64(d2, r2), 63));
  }
  const std::size_t vector_hits =
      static_cast<std::size_t>(vgetq_lane_u64(hits, 0) + vgetq_lane_u64(hits, 1));
  return vector_hits + scalar_count_in_disk(cos_t + j, sin_t + j, n - j,
                                            radius, center_x, disk_radius);
}

void neon_accumulate_abs2(const double* interleaved, std::size_t n,
                          double* density) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t z0 = vld1q_f64(interleaved + 2 * i);
    const float64x2_t z1 = vld1q_f64(interleaved + 2 * i + 2);
    // pairwise add -> (|z0|^2, |z1|^2)
    const float64x2_t sums = vpaddq_f64(vmulq_f64(z0, z0), vmulq_f64(z1, z1));
    vst1q_f64(density + i, vaddq_f64(vld1q_f64(density + i), sums));
  }
  scalar_accumulate_abs2(interleaved + 2 * i, n - i, density + i);
}

}  // namespace nhssh::kernels::detail
