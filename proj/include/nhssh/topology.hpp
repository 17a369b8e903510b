#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "nhssh/model.hpp"

namespace nhssh {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Exceptional-point picture of the non-reciprocal model in the
// (d_x^R, d_y^R) plane: both EPs run on circles of radius |delta2| centred
// at (-delta1, 0) and (+delta1, 0) while the d-point runs on the circle of
// radius |t2| centred at (t1, 0).
struct EpGeometryH1 {
  Point2 ep_center_1;
  Point2 ep_center_2;
  double ep_radius = 0.0;
  Point2 d_center;
  double d_radius = 0.0;
  bool eigvec_coalesce_at_pi = false;  // |delta1 - delta2| = t1 + t2
  bool eigvec_coalesce_at_0 = false;   // |delta1 + delta2| = |t1 - t2|
  bool zero_imag_energy = false;       // t1 / t2 = -delta1 / delta2
};

EpGeometryH1 ep_geometry_h1(const ModelParams& p, double tol = 1e-9);

// Exceptional circle of the PT model: (d_x^R)^2 + (d_y^R)^2 = u^2.
struct EpCircleH2 {
  double radius = 0.0;
  Point2 d_center;
  double d_radius = 0.0;
};

EpCircleH2 ep_circle_h2(const ModelParams& p);

struct WindingResult {
  double nu = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  std::size_t n_k = 0;
  // Distance of the raw accumulated windings from the nearest integer.
  double residue = 0.0;
  // Smallest distance between the d-point and an EP seen while integrating.
  double min_ep_distance = 0.0;
};

inline constexpr std::size_t kDefaultWindingGrid = 4096;
inline constexpr std::size_t kMinWindingGrid = 1000;
inline constexpr double kTransitionDistance = 1e-9;
inline constexpr double kWindingResidueLimit = 0.05;

// nu = (nu1 + nu2) / 2 from the phases phi1 = arg(d_+), phi2 = -arg(d_-)
// accumulated over the Brillouin zone. Throws TransitionLine when the
// d-point comes within kTransitionDistance of an EP.
WindingResult winding_nu(const ModelParams& p,
                         std::size_t n_k = kDefaultWindingGrid);

// Closed-form nu from comparing circle radii with centre offsets. Returns
// nullopt on a transition line (an equality within rel_tol).
std::optional<double> winding_nu_oracle(const ModelParams& p,
                                        double rel_tol = 1e-12);

// Closed BZ integral of d(phi_I)/dk with exp(-2 phi_I) = |d_+ / d_-|.
double phi_imag_closure(const ModelParams& p,
                        std::size_t n_k = kDefaultWindingGrid);

// Winding of (d_x^R, d_y^R) around the origin for the PT model: 1 when
// |t1| < |t2|, 0 when |t1| > |t2|. Throws InvalidArgument when |t1| = |t2|.
double winding_nu_h2(const ModelParams& p,
                     std::size_t n_k = kDefaultWindingGrid);

// Arc fraction of the exceptional circle enclosed by the d-curve.
double winding_nu_prime(const ModelParams& p);

// Monte-Carlo estimate of the same arc fraction: the share of n_samples
// random points on the circle of radius u that fall inside the disk of radius
// |t2| centred at (t1, 0).
double winding_nu_prime_oracle(const ModelParams& p, std::size_t n_samples,
                               std::uint64_t seed = 20240601);

// u interval (|t1 - t2|, t1 + t2) over which the d-curve cuts the exceptional
// circle.
std::pair<double, double> reality_interval(const ModelParams& p);

// Share of k points on the grid with Re E != 0 (compare with nu').
double real_energy_fraction(const ModelParams& p,
                            std::size_t n_k = kDefaultWindingGrid);

struct BerryResult {
  double q_plus = 0.0;
  double q_minus = 0.0;
  double q_global = 0.0;
  std::size_t n_k = 0;
  // |q_global / 2 pi - round(q_global / 2 pi)|
  double residue = 0.0;
  // min over the grid of |E_plus(k)|
  double min_gap = 0.0;
};

inline constexpr double kBandTouchGap = 1e-6;

// Bi-orthogonal Berry phases of both PT-model bands. Throws BandTouching when
// E(k) vanishes on or between grid points.
BerryResult complex_berry_phase(const ModelParams& p,
                                std::size_t n_k = kDefaultWindingGrid);

}  // namespace nhssh
