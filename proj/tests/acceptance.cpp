// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli.hpp"
#include "cookbook.hpp"
#include "nhssh/error.hpp"
#include "nhssh/parallel.hpp"
#include "nhssh/skin.hpp"
#include "nhssh/spectral.hpp"
#include "nhssh/sweep.hpp"
#include "nhssh/topology.hpp"
#include "support.hpp"

using namespace nhssh;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed conditions; detail keeps the first few.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 4) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }
  Outcome outcome() const {
    if (failures_ == 0) return {true, notes_};
    return {false, std::to_string(failures_) + " failed: " + detail_};
  }

 private:
  int failures_ = 0;
  std::string detail_;
  std::string notes_;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Worst pairing and backward errors over every decomposition made here.
struct SpectrumAudit {
  double chiral = 0.0;
  double pt = 0.0;
  double backward = 0.0;
  std::size_t count = 0;

  void add(const ModelParams& p, std::span<const cplx> e) {
    std::vector<cplx> v(e.begin(), e.end());
    chiral = std::max(chiral, test::multiset_distance(v, test::negated(v)));
    if (p.kind == ModelKind::ImaginaryPotential) {
      pt = std::max(pt, test::multiset_distance(v, test::conjugated(v)));
    }
    ++count;
  }
  void add(const ModelParams& p, const Spectrum& s) {
    add(p, s.eigenvalues);
    backward = std::max(backward, s.backward_error);
  }
};

SpectrumAudit audit;

Spectrum audited_obc(const ModelParams& p, int cells) {
  Spectrum s = obc_spectrum(p, cells);
  audit.add(p, s);
  return s;
}

std::vector<cplx> audited_pbc(const ModelParams& p, std::size_t nk) {
  const auto grid = brillouin_grid(nk);
  auto e = flatten(pbc_spectrum(p, grid));
  audit.add(p, e);
  return e;
}

double max_abs_im(std::span<const cplx> e) {
  double m = 0.0;
  for (const auto& x : e) m = std::max(m, std::abs(x.imag()));
  return m;
}

// Numerical nu on every cell of the plane; NaN where the oracle or the
// integral reports a transition line.
PhaseGrid numeric_plane(double t1, double t2, std::size_t n) {
  PhaseGrid g{{"delta1", -2, 2, n}, {"delta2", -2, 2, n}, Observable::Nu, {}, {}};
  g.values.assign(n * n, NAN);
  g.indeterminate.assign(n * n, true);
  parallel_for(n * n, [&](std::size_t i) {
    const auto p = non_reciprocal(t1, t2, g.x_axis.value(i % n), g.y_axis.value(i / n));
    if (!winding_nu_oracle(p)) return;
    try {
      g.values[i] = winding_nu(p).nu;
      g.indeterminate[i] = false;
    } catch (const TransitionLine&) {
    }
  });
  return g;
}

struct PlaneCase {
  double t2;
  double cut_d1;
  double cut_expected;
};
const PlaneCase kPlanes[] = {{2.0, 0.5, 0.5}, {0.5, 0.25, 0.25}};
constexpr std::size_t kPlaneN = 100;

std::vector<PhaseGrid>& planes() {
  static std::vector<PhaseGrid> cache;
  if (cache.empty()) {
    for (const auto& c : kPlanes) cache.push_back(numeric_plane(1.0, c.t2, kPlaneN));
  }
  return cache;
}

Outcome criterion1() {
  Tally t;
  const auto& grids = planes();
  std::size_t checked = 0, skipped = 0;
  for (std::size_t g = 0; g < grids.size(); ++g) {
    const auto& grid = grids[g];
    for (std::size_t iy = 0; iy < kPlaneN; ++iy) {
      for (std::size_t ix = 0; ix < kPlaneN; ++ix) {
        const auto p = non_reciprocal(1.0, kPlanes[g].t2, grid.x_axis.value(ix),
                                      grid.y_axis.value(iy));
        const auto oracle = winding_nu_oracle(p);
        if (!oracle || grid.is_indeterminate(ix, iy)) {
          ++skipped;
          continue;
        }
        ++checked;
        t.require(grid.at(ix, iy) == *oracle,
                  "nu(" + num(p.delta1) + "," + num(p.delta2) + ")=" + num(grid.at(ix, iy)));
      }
    }
    const auto& c = kPlanes[g];
    const auto line = sweep_nu_line(1.0, c.t2, c.cut_d1, {-2, 2}, kPlaneN);
    const double step = 4.0 / (kPlaneN - 1);
    double nearest = INFINITY;
    for (double j : line.jumps) nearest = std::min(nearest, std::abs(j - c.cut_expected));
    t.require(nearest <= step, "cut t2=" + num(c.t2) + " off by " + num(nearest));
    t.note("cut t2=" + num(c.t2) + " jump offset " + num(nearest));
  }
  t.note(std::to_string(checked) + " cells agree, " + std::to_string(skipped) + " on lines");
  return t.outcome();
}

// Signed distances to the four coalescence lines.
std::array<double, 4> line_values(double t1, double t2, double d1, double d2) {
  return {d1 + d2 - std::abs(t1 - t2), d1 + d2 + std::abs(t1 - t2), d1 - d2 - (t1 + t2),
          d1 - d2 + (t1 + t2)};
}

Outcome criterion2() {
  Tally t;
  const auto& grids = planes();
  std::size_t jumps = 0, crossings = 0;
  for (std::size_t g = 0; g < grids.size(); ++g) {
    const auto& grid = grids[g];
    const double t2 = kPlanes[g].t2;
    const double cell = grid.x_axis.step();
    // Any line within one cell of (d1, d2)? |f| / sqrt(2) is the distance.
    auto near_line = [&](double d1, double d2) {
      for (double f : line_values(1.0, t2, d1, d2)) {
        if (std::abs(f) / std::sqrt(2.0) <= cell * std::sqrt(2.0)) return true;
      }
      return false;
    };
    auto value = [&](std::size_t ix, std::size_t iy) { return grid.at(ix, iy); };
    std::vector<std::pair<Point2, bool>> measured;
    for (std::size_t iy = 0; iy < kPlaneN; ++iy) {
      for (std::size_t ix = 0; ix < kPlaneN; ++ix) {
        for (int dir = 0; dir < 2; ++dir) {
          const std::size_t jx = ix + (dir == 0), jy = iy + (dir == 1);
          if (jx >= kPlaneN || jy >= kPlaneN) continue;
          const double a = value(ix, iy), b = value(jx, jy);
          const double mx = 0.5 * (grid.x_axis.value(ix) + grid.x_axis.value(jx));
          const double my = 0.5 * (grid.y_axis.value(iy) + grid.y_axis.value(jy));
          const bool jump = std::isnan(a) || std::isnan(b) || a != b;
          if (jump) {
            ++jumps;
            t.require(near_line(mx, my), "jump at (" + num(mx) + "," + num(my) + ") off-line");
          }
          const auto fa = line_values(1.0, t2, grid.x_axis.value(ix), grid.y_axis.value(iy));
          const auto fb = line_values(1.0, t2, grid.x_axis.value(jx), grid.y_axis.value(jy));
          // Two lines crossed at once can cancel, so only single crossings count.
          int crossed = 0;
          for (std::size_t l = 0; l < 4; ++l) crossed += (fa[l] < 0) != (fb[l] < 0);
          if (crossed == 1) {
            ++crossings;
            t.require(jump, "no jump where line crosses (" + num(mx) + "," + num(my) + ")");
          }
        }
      }
    }
  }
  t.note(std::to_string(jumps) + " jumps, " + std::to_string(crossings) + " line crossings");
  return t.outcome();
}

Outcome criterion3() {
  Tally t;
  const double t1 = 1.0, t2 = 2.0;
  for (double u : {0.0, 0.25, 0.5, 0.999, 1.0}) {
    const double v = winding_nu_prime(imaginary_potential(t1, t2, u));
    t.require(v == 1.0, "nu'(" + num(u) + ")=" + num(v));
  }
  for (double u : {3.0, 3.001, 3.5, 4.0, 10.0}) {
    const double v = winding_nu_prime(imaginary_potential(t1, t2, u));
    t.require(v == 0.0, "nu'(" + num(u) + ")=" + num(v));
  }
  const double mid = winding_nu_prime(imaginary_potential(t1, t2, std::sqrt(3.0)));
  t.require(std::abs(mid - 0.5) <= 1e-12, "nu'(sqrt3)=" + num(mid));

  std::vector<double> err(50);
  parallel_for(err.size(), [&](std::size_t i) {
    const double u = 1.0 + 2.0 * static_cast<double>(i + 1) / 51.0;
    const auto p = imaginary_potential(t1, t2, u);
    err[i] = std::abs(winding_nu_prime(p) - winding_nu_prime_oracle(p, 1000000, 1000 + i));
  });
  const double worst = *std::max_element(err.begin(), err.end());
  t.require(worst < 5e-3, "MC deviation " + num(worst));
  t.note("nu'(sqrt3)-0.5=" + num(mid - 0.5) + ", max MC deviation " + num(worst));
  return t.outcome();
}

Outcome criterion4() {
  Tally t;
  const std::size_t n = 400;
  const double step = 4.0 / (n - 1);
  for (auto [t2, lo, hi] : {std::tuple{2.0, 1.0, 3.0}, std::tuple{0.5, 0.5, 1.5}}) {
    const auto s = sweep_reality(1.0, t2, {0, 4}, n);
    t.require(s.u_low && std::abs(*s.u_low - lo) <= step,
              "u_low(t2=" + num(t2) + ")=" + (s.u_low ? num(*s.u_low) : "none"));
    t.require(s.u_high && std::abs(*s.u_high - hi) <= step,
              "u_high(t2=" + num(t2) + ")=" + (s.u_high ? num(*s.u_high) : "none"));
    if (s.u_low && s.u_high) {
      t.note("t2=" + num(t2) + ": [" + num(*s.u_low) + ", " + num(*s.u_high) + "]");
    }
  }
  return t.outcome();
}

Outcome criterion5() {
  Tally t;
  const int cells = 50;
  {
    const auto s = audited_obc(non_reciprocal(1, 2, 0.5, 1.3), cells);
    const auto z = zero_modes(s.eigenvalues, 1e-6);
    t.require(z.size() == 2, "NR zero modes " + std::to_string(z.size()));
  }
  {
    const auto s = audited_obc(imaginary_potential(1, 2, 2), cells);
    const auto prof = localization_profile(s, 2 * cells);
    std::size_t near = 0;
    double min_weight = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto e = s.eigenvalues[i];
      if (std::min(std::abs(e - cplx(0, 2)), std::abs(e + cplx(0, 2))) >= 1e-6) continue;
      ++near;
      min_weight = std::min(min_weight, prof.per_state_edge_weight[i].total());
    }
    t.require(near == 2, "PT states at +-2i: " + std::to_string(near));
    t.require(min_weight > 0.9, "edge weight " + num(min_weight));
    t.note("PT edge weight " + num(min_weight));
  }
  {
    const auto s = audited_obc(imaginary_potential(1, 0.5, 2), cells);
    std::size_t near = 0;
    for (const auto& e : s.eigenvalues) {
      near += std::min(std::abs(e - cplx(0, 2)), std::abs(e + cplx(0, 2))) < 1e-6;
    }
    t.require(near == 0, "trivial PT states at +-2i: " + std::to_string(near));
  }
  return t.outcome();
}

Outcome criterion6() {
  Tally t;
  const auto p = non_reciprocal(1, 2, 0.5, 0.3);
  const double pbc = max_abs_im(audited_pbc(p, 401));
  const double obc = max_abs_im(audited_obc(p, 50).eigenvalues);
  t.require(pbc > 0.1, "PBC max|Im E|=" + num(pbc));
  t.require(obc < 1e-8, "OBC max|Im E|=" + num(obc));
  t.note("PBC " + num(pbc) + ", OBC " + num(obc));
  return t.outcome();
}

Outcome criterion7() {
  Tally t;
  const int cells = 50;
  auto verdict = [&](const ModelParams& p) {
    return nhse_verdict(localization_profile(audited_obc(p, cells), 2 * cells));
  };
  for (auto [t2, d1, d2] : {std::tuple{2.0, 0.5, 1.3}, std::tuple{0.5, 0.5, 0.3}}) {
    const auto v = verdict(non_reciprocal(1, t2, d1, d2));
    const auto f = verdict(non_reciprocal(1, t2, -d1, -d2));
    const std::string tag = "(" + num(t2) + "," + num(d1) + "," + num(d2) + ")";
    t.require(v.present && v.localized_fraction >= 0.8,
              tag + " fraction " + num(v.localized_fraction));
    t.require(f.present && f.side != v.side && f.side != Side::None,
              tag + " flip side " + std::string(to_string(f.side)));
    t.note(tag + " " + std::string(to_string(v.side)) + "->" + std::string(to_string(f.side)));
  }
  for (auto [t2, u] : {std::pair{2.0, 2.0}, std::pair{0.5, 1.0}}) {
    const auto v = verdict(imaginary_potential(1, t2, u));
    t.require(!v.present, "PT (" + num(t2) + "," + num(u) + ") reports skin effect");
  }
  return t.outcome();
}

Outcome criterion8() {
  Tally t;
  const double two_pi = 2 * test::kPi;
  const auto a = complex_berry_phase(imaginary_potential(1, 2, 0.5), 4096);
  const auto b = complex_berry_phase(imaginary_potential(1, 0.5, 0.2), 4096);
  t.require(std::abs(a.q_global - two_pi) <= 1e-6, "Q(1,2,.5)=" + num(a.q_global));
  t.require(std::abs(b.q_global) <= 1e-6, "Q(1,.5,.2)=" + num(b.q_global));
  test::Sampler s(8);
  int agreed = 0;
  while (agreed < 20) {
    const double t1 = s.uniform(0.2, 3), t2 = s.uniform(0.2, 3), u = s.uniform(0, 4);
    if (std::abs(t1 - t2) < 0.05) continue;
    const auto p = imaginary_potential(t1, t2, u);
    BerryResult r;
    try {
      r = complex_berry_phase(p, 4096);
    } catch (const BandTouching&) {
      continue;
    }
    const double q = r.q_global / two_pi;
    const double w = winding_nu_h2(p);
    t.require(std::abs(q - w) <= 1e-6, "Q/2pi=" + num(q) + " vs " + num(w));
    ++agreed;
  }
  t.note("Q/2pi = nu_h2 on 20 random gapped sets");
  return t.outcome();
}

Outcome criterion9() {
  Tally t;
  test::Sampler s(9);
  // d.sigma reconstruction
  double recon = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = s.any_params();
    const double k = s.uniform(-test::kPi, test::kPi);
    const Eigen::Matrix2cd diff = d_vector(p, k).to_matrix() - bloch_matrix(p, k).entries;
    recon = std::max(recon, diff.cwiseAbs().maxCoeff());
  }
  t.require(recon < 1e-12, "reconstruction " + num(recon));

  double closure = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto p = s.any_params();
    if (p.kind != ModelKind::NonReciprocal) {
      p = non_reciprocal(p.t1, p.t2, s.uniform(-2, 2), s.uniform(-2, 2));
    }
    closure = std::max(closure, std::abs(phi_imag_closure(p)));
  }
  t.require(closure < 1e-8, "phi_I closure " + num(closure));

  for (int i = 0; i < 60; ++i) {
    const auto p = s.any_params();
    audited_obc(p, 10 + static_cast<int>(s.uniform(0, 41)));
    audited_pbc(p, 256);
  }
  t.require(audit.chiral < 1e-8, "+-E pairing " + num(audit.chiral));
  t.require(audit.pt < 1e-8, "E,E* pairing " + num(audit.pt));
  t.require(audit.backward < 1e-8, "backward error " + num(audit.backward));
  t.note(std::to_string(audit.count) + " spectra: pairing " + num(audit.chiral) + "/" +
         num(audit.pt) + ", backward " + num(audit.backward) + ", recon " + num(recon) +
         ", closure " + num(closure));
  return t.outcome();
}

Outcome criterion10(const fs::path& dir) {
  Tally t;
  fs::create_directories(dir);
  std::size_t ran = 0;
  for (const auto& r : cli::cookbook()) {
    const auto argv_s = cli::recipe_argv(r, (dir / r.name).string(), false);
    std::vector<const char*> argv;
    for (const auto& a : argv_s) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    t.require(rc == 0, r.name + " exit " + std::to_string(rc) + " " + err.str());
    ++ran;
  }
  t.note(std::to_string(ran) + " recipes");
  return t.outcome();
}

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0 for no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string work_dir = "acceptance_out";
  std::vector<int> only;
  app.add_option("--work-dir", work_dir, "directory for figure outputs");
  app.add_option("--only", only, "criterion ids to run");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "nu phase diagram matches oracle", 30, criterion1},
      {2, "nu jumps sit on coalescence lines", 0, criterion2},
      {3, "nu' curve and Monte-Carlo arc oracle", 10, criterion3},
      {4, "PT reality thresholds", 0, criterion4},
      {5, "zero and edge modes", 5, criterion5},
      {6, "bulk-boundary breakdown", 0, criterion6},
      {7, "skin effect", 0, criterion7},
      {8, "complex Berry phase", 0, criterion8},
      {9, "property suites", 0, criterion9},
      {10, "full figure set regenerates", 300, [&] { return criterion10(work_dir); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " [" << timing
              << (c.budget_s > 0 ? " / " + num(c.budget_s) + " s" : std::string()) << "] "
              << o.detail << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
