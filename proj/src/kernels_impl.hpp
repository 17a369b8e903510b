#pragma once

// Internal declarations shared by the per-ISA kernel translation units. The
// vector units are compiled with extra target flags, so this header must stay
// free of standard-library templates.

#include <cstddef>

#include "nhssh/kernels.hpp"

namespace nhssh::kernels::detail {

#define NHSSH_DECLARE_KERNELS(prefix)                                          \
  void prefix##_radicand(const double* cos_k, const double* sin_k,            \
                         std::size_t n, double a, double b, double c,          \
                         double* re, double* im);                              \
  void prefix##_d_vector(const double* cos_k, const double* sin_k,            \
                         std::size_t n, const DVectorCoefficients& coeff,      \
                         DVectorColumns out);                                  \
  std::size_t prefix##_count_in_disk(const double* cos_t, const double* sin_t, \
                                     std::size_t n, double radius,             \
                                     double center_x, double disk_radius);     \
  void prefix##_accumulate_abs2(const double* interleaved, std::size_t n,      \
                                double* density);

NHSSH_DECLARE_KERNELS(scalar)
NHSSH_DECLARE_KERNELS(avx2)
NHSSH_DECLARE_KERNELS(neon)

#undef NHSSH_DECLARE_KERNELS

}  // namespace nhssh::kernels::detail
