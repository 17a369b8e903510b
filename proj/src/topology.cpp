#include "nhssh/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nhssh/error.hpp"
#include "nhssh/kernels.hpp"
#include "nhssh/spectral.hpp"

namespace nhssh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxStepPhase = kPi / 4.0;
constexpr int kMaxRefineDepth = 48;

void require_kind(const ModelParams& p, ModelKind kind, const char* what) {
  if (p.kind != kind) {
    throw InvalidArgument(std::string(what) + " applies to the " +
                          std::string(to_string(kind)) + " model only");
  }
}

void require_grid(std::size_t n_k) {
  if (n_k < kMinWindingGrid) {
    throw InvalidArgument("winding integrals need n_k >= " +
                          std::to_string(kMinWindingGrid) + ", got " +
                          std::to_string(n_k));
  }
}

kernels::DVectorCoefficients d_coefficients(const ModelParams& p) {
  if (p.kind == ModelKind::NonReciprocal) {
    return {p.t1, p.t2, -p.delta2, -p.delta1, p.delta2};
  }
  return {p.t1, p.t2, 0.0, 0.0, 0.0};
}

struct DGrid {
  std::vector<double> k, dx_re, dy_re, dx_im, dy_im;
};

DGrid sample_d(const ModelParams& p, std::size_t n_k) {
  DGrid g;
  g.k = brillouin_grid(n_k);
  std::vector<double> c(n_k), s(n_k);
  for (std::size_t j = 0; j < n_k; ++j) {
    c[j] = std::cos(g.k[j]);
    s[j] = std::sin(g.k[j]);
  }
  g.dx_re.resize(n_k);
  g.dy_re.resize(n_k);
  g.dx_im.resize(n_k);
  g.dy_im.resize(n_k);
  kernels::active().d_vector(
      c.data(), s.data(), n_k, d_coefficients(p),
      {g.dx_re.data(), g.dy_re.data(), g.dx_im.data(), g.dy_im.data()});
  return g;
}

// Offsets from the d-point to the two EPs, (d_x^R - d_y^I, d_y^R + d_x^I) and
// (d_x^R + d_y^I, d_y^R - d_x^I); their phases are phi1 and phi2.
cplx ep_offset_1(double dxr, double dyr, double dxi, double dyi) {
  return {dxr - dyi, dyr + dxi};
}
cplx ep_offset_2(double dxr, double dyr, double dxi, double dyi) {
  return {dxr + dyi, dyr - dxi};
}

// Accumulates the phase of a closed curve z(k) over the Brillouin zone from
// principal-value increments. Steps whose increment exceeds pi/4 are bisected
// so a curve passing close to the origin between grid points is still
// followed correctly.
class PhaseAccumulator {
 public:
  explicit PhaseAccumulator(std::function<cplx(double)> curve)
      : curve_(std::move(curve)) {}

  double total(std::span<const double> k, std::span<const cplx> z) {
    double sum = 0.0;
    const std::size_t n = k.size();
    for (std::size_t j = 0; j < n; ++j) {
      track(z[j]);
      const double k_next = j + 1 < n ? k[j + 1] : k[0] + 2.0 * kPi;
      sum += step(k[j], z[j], k_next, z[(j + 1) % n], 0);
    }
    return sum;
  }

  double min_distance() const { return min_distance_; }

 private:
  void track(cplx z) {
    const double d = std::abs(z);
    min_distance_ = std::min(min_distance_, d);
    if (d < kTransitionDistance) {
      throw TransitionLine(
          "d-point within " + std::to_string(kTransitionDistance) +
          " of an exceptional point; perturb the parameters off the "
          "transition line");
    }
  }

  double step(double ka, cplx za, double kb, cplx zb, int depth) {
    const double delta = std::arg(zb / za);
    if (std::abs(delta) <= kMaxStepPhase) return delta;
    if (depth >= kMaxRefineDepth) {
      throw TransitionLine("phase of the d-vector jumps by " +
                           std::to_string(delta) +
                           " on an unresolvable k interval");
    }
    const double km = 0.5 * (ka + kb);
    const cplx zm = curve_(km);
    track(zm);
    return step(ka, za, km, zm, depth + 1) + step(km, zm, kb, zb, depth + 1);
  }

  std::function<cplx(double)> curve_;
  double min_distance_ = std::numeric_limits<double>::infinity();
};

struct Winding {
  double value;
  double residue;
  double min_distance;
};

Winding wind(const ModelParams& p, std::span<const double> k,
             std::span<const cplx> z,
             cplx (*offset)(double, double, double, double)) {
  PhaseAccumulator acc([&p, offset](double kk) {
    const DVector d = d_vector(p, kk);
    return offset(d.real_part[0], d.real_part[1], d.imag_part[0],
                  d.imag_part[1]);
  });
  const double turns = acc.total(k, z) / (2.0 * kPi);
  const double rounded = std::round(turns);
  return {rounded + 0.0, std::abs(turns - rounded), acc.min_distance()};
}

std::vector<cplx> offsets(const DGrid& g,
                          cplx (*offset)(double, double, double, double)) {
  std::vector<cplx> z(g.k.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    z[j] = offset(g.dx_re[j], g.dy_re[j], g.dx_im[j], g.dy_im[j]);
  }
  return z;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

EpGeometryH1 ep_geometry_h1(const ModelParams& p, double tol) {
  require_kind(p, ModelKind::NonReciprocal, "ep_geometry_h1");
  EpGeometryH1 g;
  g.ep_center_1 = {-p.delta1, 0.0};
  g.ep_center_2 = {p.delta1, 0.0};
  g.ep_radius = std::abs(p.delta2);
  g.d_center = {p.t1, 0.0};
  g.d_radius = std::abs(p.t2);
  g.eigvec_coalesce_at_pi =
      near(std::abs(p.delta1 - p.delta2), p.t1 + p.t2, tol);
  g.eigvec_coalesce_at_0 =
      near(std::abs(p.delta1 + p.delta2), std::abs(p.t1 - p.t2), tol);
  // t1 / t2 = -delta1 / delta2, cross-multiplied
  g.zero_imag_energy = near(p.t1 * p.delta2 + p.t2 * p.delta1, 0.0, tol);
  return g;
}

EpCircleH2 ep_circle_h2(const ModelParams& p) {
  require_kind(p, ModelKind::ImaginaryPotential, "ep_circle_h2");
  return {std::abs(p.u), {p.t1, 0.0}, std::abs(p.t2)};
}

WindingResult winding_nu(const ModelParams& p, std::size_t n_k) {
  require_kind(p, ModelKind::NonReciprocal, "winding_nu");
  require_grid(n_k);
  const DGrid g = sample_d(p, n_k);
  const auto z1 = offsets(g, ep_offset_1);
  const auto z2 = offsets(g, ep_offset_2);
  const Winding w1 = wind(p, g.k, z1, ep_offset_1);
  const Winding w2 = wind(p, g.k, z2, ep_offset_2);

  WindingResult r;
  r.nu1 = w1.value;
  r.nu2 = w2.value;
  r.nu = 0.5 * (r.nu1 + r.nu2);
  r.n_k = n_k;
  r.residue = std::max(w1.residue, w2.residue);
  r.min_ep_distance = std::min(w1.min_distance, w2.min_distance);
  if (r.residue >= kWindingResidueLimit) {
    throw TransitionLine("winding residue " + std::to_string(r.residue) +
                         " too large to round reliably");
  }
  return r;
}

std::optional<double> winding_nu_oracle(const ModelParams& p, double rel_tol) {
  require_kind(p, ModelKind::NonReciprocal, "winding_nu_oracle");
  // The vector from each EP to the d-point runs on a circle of radius
  // |t2 -+ delta2| centred at (t1 +- delta1, 0); it winds iff the circle
  // encloses the origin.
  const double r1 = std::abs(p.t2 - p.delta2);
  const double c1 = std::abs(p.t1 + p.delta1);
  const double r2 = std::abs(p.t2 + p.delta2);
  const double c2 = std::abs(p.t1 - p.delta1);
  const double scale = std::max({r1, c1, r2, c2, 1e-300});
  if (near(r1, c1, rel_tol * scale) || near(r2, c2, rel_tol * scale)) {
    return std::nullopt;
  }
  return 0.5 * ((r1 > c1 ? 1.0 : 0.0) + (r2 > c2 ? 1.0 : 0.0));
}

double phi_imag_closure(const ModelParams& p, std::size_t n_k) {
  require_kind(p, ModelKind::NonReciprocal, "phi_imag_closure");
  require_grid(n_k);
  const DGrid g = sample_d(p, n_k);
  std::vector<double> phi_i(n_k);
  for (std::size_t j = 0; j < n_k; ++j) {
    const double plus = std::abs(
        ep_offset_1(g.dx_re[j], g.dy_re[j], g.dx_im[j], g.dy_im[j]));
    const double minus = std::abs(
        ep_offset_2(g.dx_re[j], g.dy_re[j], g.dx_im[j], g.dy_im[j]));
    if (plus < kTransitionDistance || minus < kTransitionDistance) {
      throw TransitionLine("d_+ or d_- vanishes on the k grid");
    }
    phi_i[j] = -0.5 * std::log(plus / minus);
  }
  double integral = 0.0;
  for (std::size_t j = 0; j < n_k; ++j) {
    integral += phi_i[(j + 1) % n_k] - phi_i[j];
  }
  return integral;
}

double winding_nu_h2(const ModelParams& p, std::size_t n_k) {
  require_kind(p, ModelKind::ImaginaryPotential, "winding_nu_h2");
  require_grid(n_k);
  const double a = std::abs(p.t1);
  const double b = std::abs(p.t2);
  if (near(a, b, 1e-12 * std::max(a, b))) {
    throw InvalidArgument(
        "winding of the real d-vector is undefined at |t1| = |t2|");
  }
  const DGrid g = sample_d(p, n_k);
  std::vector<cplx> z(n_k);
  for (std::size_t j = 0; j < n_k; ++j) z[j] = {g.dx_re[j], g.dy_re[j]};
  PhaseAccumulator acc([&p](double k) {
    const DVector d = d_vector(p, k);
    return cplx(d.real_part[0], d.real_part[1]);
  });
  return std::round(acc.total(g.k, z) / (2.0 * kPi)) + 0.0;
}

double winding_nu_prime(const ModelParams& p) {
  require_kind(p, ModelKind::ImaginaryPotential, "winding_nu_prime");
  if (p.u < 0.0 || !(p.t1 > 0.0)) {
    throw InvalidArgument("nu' needs u >= 0 and t1 > 0");
  }
  const double t1 = p.t1;
  const double t2 = std::abs(p.t2);
  const double u = p.u;
  const auto [low, high] = reality_interval(p);
  if (u <= low) return 1.0;
  if (u >= high) return 0.0;
  const double product = ((u + t1) * (u + t1) - t2 * t2) *
                         (t2 * t2 - (u - t1) * (u - t1));
  const double denominator = u * u + t1 * t1 - t2 * t2;
  // atan2 with a non-negative first argument lands in [0, pi].
  return std::atan2(std::sqrt(std::max(product, 0.0)), denominator) / kPi;
}

double winding_nu_prime_oracle(const ModelParams& p, std::size_t n_samples,
                               std::uint64_t seed) {
  require_kind(p, ModelKind::ImaginaryPotential, "winding_nu_prime_oracle");
  if (n_samples == 0) throw InvalidArgument("need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<double> c(n_samples), s(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) {
    const double theta = angle(rng);
    c[j] = std::cos(theta);
    s[j] = std::sin(theta);
  }
  const std::size_t inside = kernels::active().count_in_disk(
      c.data(), s.data(), n_samples, std::abs(p.u), p.t1, std::abs(p.t2));
  return static_cast<double>(inside) / static_cast<double>(n_samples);
}

std::pair<double, double> reality_interval(const ModelParams& p) {
  require_kind(p, ModelKind::ImaginaryPotential, "reality_interval");
  const double a = std::abs(p.t1);
  const double b = std::abs(p.t2);
  return {std::abs(a - b), a + b};
}

double real_energy_fraction(const ModelParams& p, std::size_t n_k) {
  const auto k = brillouin_grid(n_k);
  const auto bands = pbc_spectrum(p, k);
  const double tol = bloch_reality_tolerance(flatten(bands));
  std::size_t with_real = 0;
  for (const auto& b : bands) {
    if (std::abs(b.e_plus.real()) > tol) ++with_real;
  }
  return static_cast<double>(with_real) / static_cast<double>(n_k);
}

BerryResult complex_berry_phase(const ModelParams& p, std::size_t n_k) {
  require_kind(p, ModelKind::ImaginaryPotential, "complex_berry_phase");
  require_grid(n_k);
  const auto k = brillouin_grid(n_k);
  const cplx iu(0.0, p.u);

  std::vector<cplx> h12(n_k), h21(n_k), e_plus(n_k);
  double min_gap = std::numeric_limits<double>::infinity();
  double lowest = std::numeric_limits<double>::infinity();
  double highest = -lowest;
  for (std::size_t j = 0; j < n_k; ++j) {
    h12[j] = p.t1 + p.t2 * std::polar(1.0, -k[j]);
    h21[j] = p.t1 + p.t2 * std::polar(1.0, k[j]);
    const double e2 = std::norm(h12[j]) - p.u * p.u;  // real for this model
    lowest = std::min(lowest, e2);
    highest = std::max(highest, e2);
    e_plus[j] = principal_sqrt(cplx(e2, 0.0));
    min_gap = std::min(min_gap, std::abs(e_plus[j]));
  }
  if (min_gap <= kBandTouchGap || (lowest < 0.0 && highest > 0.0)) {
    throw BandTouching(
        "bands touch on the Brillouin zone (min |E| = " +
        std::to_string(min_gap) +
        "); move u outside [|t1 - t2|, t1 + t2] or off the gap closing");
  }

  // Right eigenvector (h12, E - iu) and left row vector (h21, E - iu) form a
  // smooth periodic gauge that carries the phase winding of h12 in the A
  // component. Per-step phases are summed, so the result is not reduced
  // modulo 2 pi.
  auto band_phase = [&](double sign) {
    double q = 0.0;
    for (std::size_t j = 0; j < n_k; ++j) {
      const std::size_t next = (j + 1) % n_k;
      const cplx b_here = sign * e_plus[j] - iu;
      const cplx b_next = sign * e_plus[next] - iu;
      const cplx norm = h21[j] * h12[j] + b_here * b_here;
      const cplx overlap = (h21[j] * h12[next] + b_here * b_next) / norm;
      q -= std::arg(overlap);
    }
    return q;
  };

  BerryResult r;
  r.q_plus = band_phase(1.0);
  r.q_minus = band_phase(-1.0);
  r.q_global = r.q_plus + r.q_minus;
  r.n_k = n_k;
  const double turns = r.q_global / (2.0 * kPi);
  r.residue = std::abs(turns - std::round(turns));
  r.min_gap = min_gap;
  return r;
}

}  // namespace nhssh
