#include "nhssh/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "nhssh/error.hpp"
#include "nhssh/parallel.hpp"

namespace nhssh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_points(std::size_t n, const char* what) {
  if (n == 0) {
    throw InvalidArgument(std::string(what) + " needs at least one point");
  }
}

void require_range(Range r, const char* what) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.max < r.min) {
    throw InvalidArgument(std::string("malformed ") + what + " range");
  }
}

PhaseGrid empty_grid(Axis x, Axis y, Observable o) {
  PhaseGrid g{std::move(x), std::move(y), o, {}, {}};
  g.values.assign(g.x_axis.n * g.y_axis.n, kNaN);
  g.indeterminate.assign(g.values.size(), false);
  return g;
}

}  // namespace

double Axis::value(std::size_t i) const {
  if (n <= 1) return min;
  if (i + 1 == n) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
}

double Axis::step() const {
  return n <= 1 ? 0.0 : (max - min) / static_cast<double>(n - 1);
}

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::Nu:
      return "nu";
    case Observable::NuPrime:
      return "nu_prime";
    case Observable::ZeroModeCount:
      return "zero_mode_count";
    case Observable::NuH2:
      return "nu_h2";
    case Observable::RealityClass:
      break;
  }
  return "reality_class";
}

std::size_t DeltaPlaneSweep::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(spot_checks.begin(), spot_checks.end(),
                    [](const SpotCheck& s) { return !s.agrees(); }));
}

DeltaPlaneSweep sweep_delta_plane(double t1, double t2, Range delta1,
                                  Range delta2, std::size_t n,
                                  std::uint64_t seed, double spot_fraction) {
  require_points(n, "delta-plane sweep");
  require_range(delta1, "delta1");
  require_range(delta2, "delta2");
  DeltaPlaneSweep out;
  out.seed = seed;
  out.grid = empty_grid({"delta1", delta1.min, delta1.max, n},
                        {"delta2", delta2.min, delta2.max, n}, Observable::Nu);
  auto& g = out.grid;

  std::vector<std::size_t> determinate;
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const auto nu = winding_nu_oracle(
          non_reciprocal(t1, t2, g.x_axis.value(ix), g.y_axis.value(iy)));
      const std::size_t idx = g.index(ix, iy);
      if (nu) {
        g.values[idx] = *nu;
        determinate.push_back(idx);
      } else {
        g.indeterminate[idx] = true;
      }
    }
  }

  // Partial Fisher-Yates on raw generator output keeps the chosen cells
  // identical across standard libraries and thread counts.
  const auto want = std::min(
      determinate.size(),
      static_cast<std::size_t>(std::ceil(spot_fraction *
                                         static_cast<double>(n * n))));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (determinate.size() - i));
    std::swap(determinate[i], determinate[j]);
  }
  determinate.resize(want);

  out.spot_checks.resize(want);
  parallel_for(want, [&](std::size_t s) {
    const std::size_t idx = determinate[s];
    SpotCheck& check = out.spot_checks[s];
    check.ix = idx % n;
    check.iy = idx / n;
    check.oracle = g.values[idx];
    try {
      check.numeric = winding_nu(non_reciprocal(t1, t2, g.x_axis.value(check.ix),
                                                g.y_axis.value(check.iy)))
                          .nu;
    } catch (const TransitionLine&) {
      check.numeric.reset();
    }
  });
  return out;
}

NuLine sweep_nu_line(double t1, double t2, double delta1, Range delta2,
                     std::size_t n, std::size_t n_k) {
  require_points(n, "nu line");
  require_range(delta2, "delta2");
  const Axis axis{"delta2", delta2.min, delta2.max, n};
  NuLine out;
  out.points.resize(n);
  parallel_for(n, [&](std::size_t i) {
    auto& pt = out.points[i];
    pt.delta2 = axis.value(i);
    try {
      pt.nu = winding_nu(non_reciprocal(t1, t2, delta1, pt.delta2), n_k).nu;
    } catch (const TransitionLine&) {
      pt.nu.reset();
    }
  });
  const NuLinePoint* previous = nullptr;
  for (const auto& pt : out.points) {
    if (!pt.nu) continue;
    if (previous && *previous->nu != *pt.nu) {
      out.jumps.push_back(0.5 * (previous->delta2 + pt.delta2));
    }
    previous = &pt;
  }
  return out;
}

std::pair<PhaseGrid, PhaseGrid> sweep_u_t2(double t1, Range u, Range t2,
                                           std::size_t n, int n_cells,
                                           double zero_tol) {
  require_points(n, "u-t2 sweep");
  require_range(u, "u");
  require_range(t2, "t2");
  const Axis ux{"u", u.min, u.max, n};
  const Axis ty{"t2", t2.min, t2.max, n};
  PhaseGrid zeros = empty_grid(ux, ty, Observable::ZeroModeCount);
  PhaseGrid winding = empty_grid(ux, ty, Observable::NuH2);

  parallel_for(n * n, [&](std::size_t idx) {
    const ModelParams p =
        imaginary_potential(t1, ty.value(idx / n), ux.value(idx % n));
    const Spectrum s = obc_spectrum(p, n_cells, {.vectors = false});
    zeros.values[idx] =
        static_cast<double>(zero_modes(s.eigenvalues, zero_tol).size());
    try {
      winding.values[idx] = winding_nu_h2(p);
    } catch (const InvalidArgument&) {
      winding.indeterminate[idx] = true;
    } catch (const TransitionLine&) {
      winding.indeterminate[idx] = true;
    }
  });
  return {std::move(zeros), std::move(winding)};
}

std::vector<std::pair<double, double>> sweep_nu_prime(double t1, double t2,
                                                      Range u, std::size_t n) {
  require_points(n, "nu' sweep");
  require_range(u, "u");
  const Axis axis{"u", u.min, u.max, n};
  std::vector<std::pair<double, double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = axis.value(i);
    out[i] = {ui, winding_nu_prime(imaginary_potential(t1, t2, ui))};
  }
  return out;
}

RealitySweep sweep_reality(double t1, double t2, Range u, std::size_t n,
                           std::size_t n_k) {
  require_points(n, "reality sweep");
  require_range(u, "u");
  const Axis axis{"u", u.min, u.max, n};
  const auto k = brillouin_grid(n_k);
  RealitySweep out;
  out.rows.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const double ui = axis.value(i);
    const auto e = flatten(pbc_spectrum(imaginary_potential(t1, t2, ui), k));
    out.rows[i] = {ui, classify_reality(e, bloch_reality_tolerance(e))};
  });
  for (const auto& [ui, report] : out.rows) {
    if (!out.u_low && !report.all_real()) out.u_low = ui;
    if (!out.u_high && report.n_real == 0) out.u_high = ui;
  }
  return out;
}

}  // namespace nhssh
