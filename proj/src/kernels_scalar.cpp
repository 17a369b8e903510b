#include "kernels_impl.hpp"

namespace nhssh::kernels::detail {

void scalar_radicand(const double* cos_k, const double* sin_k, std::size_t n,
                     double a, double b, double c, double* re, double* im) {
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = a + b * cos_k[j];
    im[j] = c * sin_k[j];
  }
}

void scalar_d_vector(const double* cos_k, const double* sin_k, std::size_t n,
                     const DVectorCoefficients& coeff, DVectorColumns out) {
  for (std::size_t j = 0; j < n; ++j) {
    out.dx_re[j] = coeff.x0 + coeff.r * cos_k[j];
    out.dy_re[j] = coeff.r * sin_k[j];
    out.dx_im[j] = coeff.xs * sin_k[j];
    out.dy_im[j] = coeff.y0 + coeff.yc * cos_k[j];
  }
}

std::size_t scalar_count_in_disk(const double* cos_t, const double* sin_t,
                                 std::size_t n, double radius, double center_x,
                                 double disk_radius) {
  const double r2 = disk_radius * disk_radius;
  std::size_t inside = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = radius * cos_t[j] - center_x;
    const double dy = radius * sin_t[j];
    if (dx * dx + dy * dy < r2) {
      ++inside;
    }
  }
  return inside;
}

void scalar_accumulate_abs2(const double* interleaved, std::size_t n,
                            double* density) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = interleaved[2 * i];
    const double im = interleaved[2 * i + 1];
    density[i] += re * re + im * im;
  }
}

}  // namespace nhssh::kernels::detail
