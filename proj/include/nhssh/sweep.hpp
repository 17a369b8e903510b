#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhssh/spectral.hpp"
#include "nhssh/topology.hpp"

namespace nhssh {

struct Range {
  double min = 0.0;
  double max = 0.0;
};

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 1;

  // Evenly spaced, both ends included; a single point sits at min.
  double value(std::size_t i) const;
  double step() const;
};

enum class Observable { Nu, NuPrime, ZeroModeCount, NuH2, RealityClass };

std::string_view to_string(Observable o);

// values are stored row-major with shape (y_axis.n, x_axis.n). Cells on a
// transition line hold NaN and are flagged in `indeterminate`.
struct PhaseGrid {
  Axis x_axis;
  Axis y_axis;
  Observable observable = Observable::Nu;
  std::vector<double> values;
  std::vector<bool> indeterminate;

  std::size_t index(std::size_t ix, std::size_t iy) const {
    return iy * x_axis.n + ix;
  }
  double at(std::size_t ix, std::size_t iy) const {
    return values[index(ix, iy)];
  }
  bool is_indeterminate(std::size_t ix, std::size_t iy) const {
    return indeterminate[index(ix, iy)];
  }
};

struct SpotCheck {
  std::size_t ix = 0;
  std::size_t iy = 0;
  double oracle = 0.0;
  std::optional<double> numeric;  // nullopt when the integral hit an EP
  bool agrees() const { return numeric && *numeric == oracle; }
};

struct DeltaPlaneSweep {
  PhaseGrid grid;
  std::vector<SpotCheck> spot_checks;
  std::uint64_t seed = 0;
  std::size_t mismatches() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr double kSpotCheckFraction = 0.01;

// nu over the (delta1, delta2) plane from the closed-form oracle, with the
// numerical winding integral re-run on a seeded random subset of cells.
DeltaPlaneSweep sweep_delta_plane(double t1, double t2, Range delta1,
                                  Range delta2, std::size_t n,
                                  std::uint64_t seed = kDefaultSeed,
                                  double spot_fraction = kSpotCheckFraction);

struct NuLinePoint {
  double delta2 = 0.0;
  std::optional<double> nu;
};

struct NuLine {
  std::vector<NuLinePoint> points;
  std::vector<double> jumps;  // midpoints between differing neighbours
};

NuLine sweep_nu_line(double t1, double t2, double delta1, Range delta2,
                     std::size_t n, std::size_t n_k = kDefaultWindingGrid);

// x axis u, y axis t2. First grid counts OBC zero modes, second holds the
// winding of the real d-vector.
std::pair<PhaseGrid, PhaseGrid> sweep_u_t2(double t1, Range u, Range t2,
                                           std::size_t n, int n_cells,
                                           double zero_tol = kZeroModeTolerance);

std::vector<std::pair<double, double>> sweep_nu_prime(double t1, double t2,
                                                      Range u, std::size_t n);

struct RealitySweep {
  std::vector<std::pair<double, RealityReport>> rows;
  // First u with a non-real eigenvalue, and first u with no real eigenvalue.
  std::optional<double> u_low;
  std::optional<double> u_high;
};

RealitySweep sweep_reality(double t1, double t2, Range u, std::size_t n,
                           std::size_t n_k = kDefaultWindingGrid);

}  // namespace nhssh
