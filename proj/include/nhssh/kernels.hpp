#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and
// vector variants (AVX2 on x86-64, NEON on AArch64); one table is picked at
// first use from the CPU features. NHSSH_SIMD=scalar forces the reference path.
//
// None of the kernels use fused multiply-add, so every variant returns results
// bit-identical to the scalar reference.

#include <cstddef>
#include <string_view>

namespace nhssh::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

// d(k) for both models in the form
//   dxR = x0 + r cos k      dyR = r sin k
//   dxI = xs sin k          dyI = y0 + yc cos k
struct DVectorCoefficients {
  double x0 = 0.0;
  double r = 0.0;
  double xs = 0.0;
  double y0 = 0.0;
  double yc = 0.0;
};

struct DVectorColumns {
  double* dx_re;
  double* dy_re;
  double* dx_im;
  double* dy_im;
};

struct Table {
  Isa isa = Isa::Scalar;

  // re[j] = a + b cos_k[j], im[j] = c sin_k[j]
  void (*radicand)(const double* cos_k, const double* sin_k, std::size_t n,
                   double a, double b, double c, double* re, double* im);

  void (*d_vector)(const double* cos_k, const double* sin_k, std::size_t n,
                   const DVectorCoefficients& coeff, DVectorColumns out);

  // Number of points radius*(cos_t[j], sin_t[j]) strictly inside the disk of
  // radius disk_radius centred at (center_x, 0).
  std::size_t (*count_in_disk)(const double* cos_t, const double* sin_t,
                               std::size_t n, double radius, double center_x,
                               double disk_radius);

  // density[i] += |z_i|^2 for n complex values stored as (re, im) pairs.
  void (*accumulate_abs2)(const double* interleaved, std::size_t n,
                          double* density);
};

const Table& scalar_table();
// nullptr when the running CPU (or the build target) lacks the extension.
const Table* avx2_table();
const Table* neon_table();

// The table selected for this process.
const Table& active();

}  // namespace nhssh::kernels
