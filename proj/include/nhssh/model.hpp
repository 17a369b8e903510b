#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace nhssh {

using cplx = std::complex<double>;

enum class ModelKind {
  NonReciprocal,      // asymmetric intra/inter-cell hopping, chiral, no PT
  ImaginaryPotential  // staggered +iu/-iu on-site potential, PT symmetric
};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

// Parameter set shared by both models. Construct through make_params so the
// cross-field constraints hold.
struct ModelParams {
  ModelKind kind = ModelKind::NonReciprocal;
  double t1 = 1.0;      // intra-cell hopping
  double t2 = 1.0;      // inter-cell hopping
  double delta1 = 0.0;  // intra-cell non-reciprocity
  double delta2 = 0.0;  // inter-cell non-reciprocity
  double u = 0.0;       // imaginary staggered potential

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Throws InvalidArgument on non-finite input or when the non-reciprocal and
// imaginary-potential parameters are mixed.
ModelParams make_params(ModelKind kind, double t1, double t2, double delta1,
                        double delta2, double u);

inline ModelParams non_reciprocal(double t1, double t2, double delta1,
                                  double delta2) {
  return make_params(ModelKind::NonReciprocal, t1, t2, delta1, delta2, 0.0);
}

inline ModelParams imaginary_potential(double t1, double t2, double u) {
  return make_params(ModelKind::ImaginaryPotential, t1, t2, 0.0, 0.0, u);
}

struct BlochMatrix {
  Eigen::Matrix2cd entries;
  double k = 0.0;
};

// Real and imaginary parts of d in h(k) = d . sigma.
struct DVector {
  std::array<double, 3> real_part{};
  std::array<double, 3> imag_part{};
  double k = 0.0;

  cplx component(int axis) const {
    return {real_part[static_cast<std::size_t>(axis)],
            imag_part[static_cast<std::size_t>(axis)]};
  }
  // d_x sigma_x + d_y sigma_y + d_z sigma_z
  Eigen::Matrix2cd to_matrix() const;
};

struct SymmetryVerdict {
  bool chiral = false;
  bool pt = false;
  double chiral_residual = 0.0;  // max_k max_ij |(sz h sz + h)_ij|
  double pt_residual = 0.0;      // max_k max_ij |(sx h sx - h*)_ij|
  double max_residual = 0.0;
};

struct BandPair {
  cplx plus;
  cplx minus;
};

inline constexpr double kSymmetryTolerance = 1e-10;

BlochMatrix bloch_matrix(const ModelParams& p, double k);
DVector d_vector(const ModelParams& p, double k);

// Closed-form band energies E = +-sqrt(E^2(k)). E_plus takes the principal
// root (Re >= 0, Im >= 0 on the cut); E_minus = -E_plus.
BandPair dispersion(const ModelParams& p, double k);

// E^2(k) = a + b cos k + i c sin k. Both models share this shape.
struct RadicandCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};
RadicandCoefficients radicand_coefficients(const ModelParams& p);

// Square root on the branch used for E_plus.
cplx principal_sqrt(cplx z);

SymmetryVerdict check_symmetries(const ModelParams& p,
                                 std::span<const double> k_samples,
                                 double tol = kSymmetryTolerance);
// Same, on the default 101-point grid over [-pi, pi].
SymmetryVerdict check_symmetries(const ModelParams& p);

// Real-space chain with open ends, basis A1, B1, A2, B2, ...
// Element (row, col) is the amplitude for hopping from col onto row.
Eigen::MatrixXcd open_chain_hamiltonian(const ModelParams& p, int n_cells);

// Same chain closed into a ring; its spectrum is the Bloch spectrum sampled
// at k = 2 pi m / n_cells.
Eigen::MatrixXcd ring_hamiltonian(const ModelParams& p, int n_cells);

}  // namespace nhssh
