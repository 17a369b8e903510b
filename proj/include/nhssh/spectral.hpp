#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nhssh/model.hpp"

namespace nhssh {

enum class Boundary { PBC, OBC };

std::string_view to_string(Boundary b);

// Complex eigendecomposition of a general (non-normal) matrix.
//
// right_vectors: column n is psi_n, unit Euclidean norm.
// left_vectors:  column n is lambda_n with lambda_n^H H = E_n lambda_n^H and
//                lambda_n^H psi_m = delta_nm for non-defective eigenvalues.
struct Spectrum {
  Boundary boundary = Boundary::OBC;
  std::vector<cplx> eigenvalues;
  Eigen::MatrixXcd right_vectors;
  Eigen::MatrixXcd left_vectors;

  // |lambda^H psi| / (|lambda| |psi|) measured after diagonal balancing.
  // Values below kDefectiveOverlap mark eigenvalues sitting on (or next to)
  // an exceptional point.
  std::vector<double> overlaps;
  std::vector<bool> near_defective;
  // Eigenvalue condition numbers |lambda| |psi| / |lambda^H psi| in the
  // original basis. These are huge for skin-effect spectra.
  std::vector<double> condition;

  double residual = 0.0;        // max_n |H psi_n - E_n psi_n|
  double backward_error = 0.0;  // max_n |H psi_n - E_n psi_n| / max(1, |E_n|)

  std::size_t size() const { return eigenvalues.size(); }
  bool has_vectors() const { return right_vectors.cols() > 0; }
  bool any_defective() const;
  double spectral_radius() const;
};

inline constexpr double kDefectiveOverlap = 1e-8;

struct EigOptions {
  bool vectors = true;
  // Diagonal similarity D^-1 H D minimising the Frobenius norm before the
  // QR iteration. Needed for non-reciprocal chains, whose eigenvalue
  // condition numbers otherwise grow exponentially with the chain length.
  bool balance = true;
};

Spectrum eig_general(const Eigen::MatrixXcd& h, EigOptions options = {});

// Log-scales x with D = diag(exp(x)) minimising |D^-1 H D|_F, normalised to
// mean zero. Exposed for tests.
Eigen::VectorXd balancing_scales(const Eigen::MatrixXcd& h);

struct BandPoint {
  double k = 0.0;
  cplx e_plus;
  cplx e_minus;
};

// n points k_j = -pi + 2 pi j / n; the endpoint +pi is the same as -pi.
std::vector<double> brillouin_grid(std::size_t n);
// n points from -pi to +pi inclusive, for plotting.
std::vector<double> brillouin_path(std::size_t n);

std::vector<BandPoint> pbc_spectrum(const ModelParams& p,
                                    std::span<const double> k_grid);

// Both bands flattened into one list (E_plus of every k, then E_minus).
std::vector<cplx> flatten(std::span<const BandPoint> bands);

Spectrum obc_spectrum(const ModelParams& p, int n_cells,
                      EigOptions options = {});

inline constexpr double kZeroModeTolerance = 1e-6;

std::vector<std::size_t> zero_modes(std::span<const cplx> eigenvalues,
                                    double tol = kZeroModeTolerance);

struct RealityReport {
  std::size_t n_real = 0;
  std::size_t n_imaginary = 0;
  std::size_t n_complex = 0;
  double tol = 0.0;

  std::size_t total() const { return n_real + n_imaginary + n_complex; }
  bool all_real() const { return n_imaginary == 0 && n_complex == 0; }
};

inline constexpr double kBlochRealityTolerance = 1e-9;  // relative
inline constexpr double kObcRealityTolerance = 1e-6;    // absolute

// |Im E| < tol -> real (also covers |E| ~ 0); else |Re E| < tol ->
// imaginary; else complex.
RealityReport classify_reality(std::span<const cplx> eigenvalues, double tol);

// Default tolerance for Bloch spectra: kBlochRealityTolerance times the
// spectral radius (floored at 1).
double bloch_reality_tolerance(std::span<const cplx> eigenvalues);

enum class GapKind { PointGap, LineGapRe, LineGapIm, Gapless };

std::string_view to_string(GapKind kind);

struct GapClass {
  GapKind kind = GapKind::Gapless;
  double margin = 0.0;
};

inline constexpr std::size_t kMinGapGrid = 401;

// LineGapRe when min |Re E| > tol, else LineGapIm when min |Im E| > tol, else
// PointGap when min |E| > tol, else Gapless.
GapClass gap_classify(std::span<const BandPoint> bands, double tol = 1e-6);

}  // namespace nhssh
