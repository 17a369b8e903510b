#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <string_view>

#include "CLI11.hpp"
#include "nhssh/error.hpp"
#include "nhssh/plot.hpp"
#include "nhssh/skin.hpp"
#include "nhssh/sweep.hpp"
#include "nhssh/topology.hpp"
#include "nhssh/version.hpp"

namespace nhssh::cli {

json RunManifest::to_json() const {
  return {{"command", command},
          {"params", params},
          {"settings", settings},
          {"seed", seed},
          {"tool_version", tool_version},
          {"output_paths", output_paths}};
}

namespace {

struct Options {
  std::string model;
  double t1 = 1.0;
  double t2 = 2.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double u = 0.0;
  int cells = 50;
  std::size_t nk = 0;  // 0 picks the command default
  std::string out;
  std::uint64_t seed = kDefaultSeed;
  bool plot = false;

  std::string boundary = "obc";
  bool vectors = false;
  std::size_t n = 0;
  std::string range_a;
  std::string range_b;
  std::size_t mc_samples = 0;
  double zero_tol = kZeroModeTolerance;
  SkinThresholds thresholds;
};

Range parse_range(const std::string& text, const char* name) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
      throw InvalidArgument(std::string("bad number in --") + name + ": '" +
                            std::string(s) + "'");
    }
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    const double v = number(text);
    return {v, v};
  }
  const Range r{number(std::string_view(text).substr(0, comma)),
                number(std::string_view(text).substr(comma + 1))};
  if (r.max < r.min) {
    throw InvalidArgument(std::string("--") + name + " must be ordered as min,max");
  }
  return r;
}

json range_json(Range r) { return json::array({r.min, r.max}); }

class Runner {
 public:
  Runner(std::string command, const Options& o, std::ostream& out)
      : o_(o), out_(out) {
    manifest_.command = std::move(command);
    manifest_.seed = o.seed;
    manifest_.tool_version = std::string(kToolVersion);
    if (o_.out.empty()) throw InvalidArgument("--out is required");
  }

  ModelParams params(ModelKind default_kind) const {
    const ModelKind kind = o_.model.empty() ? default_kind : parse_model_kind(o_.model);
    return make_params(kind, o_.t1, o_.t2, o_.d1, o_.d2, o_.u);
  }

  std::size_t nk(std::size_t fallback) const {
    const std::size_t n = o_.nk == 0 ? fallback : o_.nk;
    if (n < 2) throw InvalidArgument("--nk must be at least 2");
    return n;
  }

  int cells() const {
    if (o_.cells < 2) throw InvalidArgument("--cells must be at least 2");
    return o_.cells;
  }

  std::size_t n(std::size_t fallback) const { return o_.n == 0 ? fallback : o_.n; }

  void emit(std::string_view suffix, std::string_view text) {
    const std::string path = o_.out + std::string(suffix);
    write_text(path, text);
    manifest_.output_paths.push_back(path);
  }
  void emit_json(std::string_view suffix, const json& j) { emit(suffix, j.dump(2) + '\n'); }
  void emit_svg(std::string_view suffix, const std::function<std::string()>& render) {
    if (o_.plot) emit(suffix, render());
  }

  RunManifest& manifest() { return manifest_; }

  int finish(int code = kOk) {
    const std::string path = o_.out + ".manifest.json";
    write_text(path, manifest_.to_json().dump(2) + '\n');
    for (const auto& p : manifest_.output_paths) out_ << p << '\n';
    out_ << path << '\n';
    return code;
  }

 private:
  const Options& o_;
  std::ostream& out_;
  RunManifest manifest_;
};

int cmd_band(const Options& o, std::ostream& out) {
  Runner r("band", o, out);
  const ModelParams p = r.params(ModelKind::NonReciprocal);
  const std::size_t nk = r.nk(401);
  const auto bands = pbc_spectrum(p, brillouin_path(nk));
  const auto gap = gap_classify(
      nk >= kMinGapGrid ? bands : pbc_spectrum(p, brillouin_path(kMinGapGrid)));

  double min_abs_re = INFINITY;
  for (const auto& b : bands) min_abs_re = std::min(min_abs_re, std::abs(b.e_plus.real()));

  r.manifest().params = to_json(p);
  r.manifest().settings = {{"nk", nk}};
  r.emit(".csv", bands_csv(bands));
  r.emit_json(".json", {{"params", to_json(p)},
                        {"gap", std::string(to_string(gap.kind))},
                        {"gap_margin", gap.margin},
                        {"min_abs_re_e", min_abs_re}});
  r.emit_svg(".svg", [&] {
    plot::Figure f{"Re E(k)", "k", "Re E", {}};
    plot::Series plus{"Re E+", {}, {}, plot::Mark::Line};
    plot::Series minus{"Re E-", {}, {}, plot::Mark::Line};
    for (const auto& b : bands) {
      plus.x.push_back(b.k);
      plus.y.push_back(b.e_plus.real());
      minus.x.push_back(b.k);
      minus.y.push_back(b.e_minus.real());
    }
    f.series = {plus, minus};
    return plot::render(f);
  });
  return r.finish();
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  Runner r("spectrum", o, out);
  const ModelParams p = r.params(ModelKind::NonReciprocal);
  r.manifest().params = to_json(p);

  Spectrum s;
  std::vector<double> edge;
  double tol = kObcRealityTolerance;
  if (o.boundary == "obc") {
    const int cells = r.cells();
    s = obc_spectrum(p, cells);
    const auto profile = localization_profile(s, 2 * static_cast<std::size_t>(cells));
    for (const auto& w : profile.per_state_edge_weight) edge.push_back(w.total());
    r.manifest().settings = {{"boundary", "obc"}, {"cells", cells}, {"zero_tol", o.zero_tol}};
  } else if (o.boundary == "pbc") {
    const std::size_t nk = r.nk(401);
    s.boundary = Boundary::PBC;
    s.eigenvalues = flatten(pbc_spectrum(p, brillouin_grid(nk)));
    tol = bloch_reality_tolerance(s.eigenvalues);
    r.manifest().settings = {{"boundary", "pbc"}, {"nk", nk}};
  } else {
    throw InvalidArgument("--boundary must be obc or pbc");
  }

  double max_abs_im = 0.0;
  for (const auto& e : s.eigenvalues) max_abs_im = std::max(max_abs_im, std::abs(e.imag()));

  r.emit(".csv", spectrum_csv(s, edge));
  r.emit_json(".json", {{"params", to_json(p)},
                        {"spectrum", to_json(s, o.vectors)},
                        {"reality", to_json(classify_reality(s.eigenvalues, tol))},
                        {"zero_modes", zero_modes(s.eigenvalues, o.zero_tol).size()},
                        {"max_abs_im_e", max_abs_im}});
  r.emit_svg(".svg", [&] {
    plot::Series pts{"", {}, {}, plot::Mark::Dots};
    for (const auto& e : s.eigenvalues) {
      pts.x.push_back(e.real());
      pts.y.push_back(e.imag());
    }
    return plot::render({std::string("Spectrum (") + std::string(to_string(s.boundary)) + ")",
                         "Re E", "Im E", {pts}});
  });
  return r.finish();
}

int cmd_skin(const Options& o, std::ostream& out) {
  Runner r("skin", o, out);
  const ModelParams p = r.params(ModelKind::NonReciprocal);
  const int cells = r.cells();
  const std::size_t sites = 2 * static_cast<std::size_t>(cells);
  const Spectrum s = obc_spectrum(p, cells);
  const auto profile = localization_profile(s, sites, o.thresholds.edge_fraction);
  const auto verdict = nhse_verdict(profile, o.thresholds);

  json weights = json::array();
  for (const auto& w : profile.per_state_edge_weight) weights.push_back({w.left, w.right});

  r.manifest().params = to_json(p);
  r.manifest().settings = {{"cells", cells},
                           {"edge_fraction", o.thresholds.edge_fraction},
                           {"state_weight", o.thresholds.state_weight},
                           {"population", o.thresholds.population}};
  r.emit(".csv", density_csv(profile.site_density));
  r.emit_json(".json", {{"params", to_json(p)},
                        {"verdict", to_json(verdict)},
                        {"edge_sites", profile.edge_sites},
                        {"edge_weights", std::move(weights)}});
  r.emit_svg(".svg", [&] {
    plot::Series d{"", {}, profile.site_density, plot::Mark::Line};
    for (std::size_t i = 0; i < sites; ++i) d.x.push_back(static_cast<double>(i));
    return plot::render({"Summed density of right eigenvectors", "site", "density", {d}});
  });
  return r.finish();
}

int cmd_berry(const Options& o, std::ostream& out) {
  Runner r("berry", o, out);
  const ModelParams p = r.params(ModelKind::ImaginaryPotential);
  if (p.kind != ModelKind::ImaginaryPotential) {
    throw InvalidArgument("berry needs the imaginary-potential model (--model pt)");
  }
  const std::size_t nk = r.nk(kDefaultWindingGrid);
  r.manifest().params = to_json(p);
  r.manifest().settings = {{"nk", nk}};

  const BerryResult b = complex_berry_phase(p, nk);
  json flags = {{"q_plus", b.q_plus},
                {"q_minus", b.q_minus},
                {"residue", b.residue},
                {"min_gap", b.min_gap}};
  if (std::abs(std::abs(p.t1) - std::abs(p.t2)) > 1e-12) {
    flags["nu_h2"] = winding_nu_h2(p, nk);
  }
  r.emit_json(".json", topology_record(p, "complex_berry_phase", b.q_global, b.n_k,
                                       std::move(flags)));
  return r.finish();
}

int cmd_delta_plane(const Options& o, std::ostream& out) {
  Runner r("phase delta-plane", o, out);
  const Range d1 = parse_range(o.range_a.empty() ? "-2,2" : o.range_a, "d1-range");
  const Range d2 = parse_range(o.range_b.empty() ? "-2,2" : o.range_b, "d2-range");
  const std::size_t n = r.n(100);
  const auto sweep = sweep_delta_plane(o.t1, o.t2, d1, d2, n, o.seed);

  const json params = {{"t1", o.t1}, {"t2", o.t2}};
  r.manifest().params = params;
  r.manifest().settings = {{"d1_range", range_json(d1)}, {"d2_range", range_json(d2)}, {"n", n}};
  json header = grid_header(sweep.grid, params, o.seed);
  header["spot_checks"] = sweep.spot_checks.size();
  header["spot_check_mismatches"] = sweep.mismatches();
  r.emit(".csv", grid_csv(sweep.grid));
  r.emit_json(".json", header);
  r.emit_svg(".svg", [&] { return plot::heatmap(sweep.grid, "winding number nu"); });
  return r.finish(sweep.mismatches() == 0 ? kOk : kNumericalFailure);
}

int cmd_nu_line(const Options& o, std::ostream& out) {
  Runner r("phase nu-line", o, out);
  const Range d2 = parse_range(o.range_a.empty() ? "0,1.5" : o.range_a, "d2-range");
  const std::size_t n = r.n(200);
  const std::size_t nk = r.nk(kDefaultWindingGrid);
  const auto line = sweep_nu_line(o.t1, o.t2, o.d1, d2, n, nk);

  r.manifest().params = {{"t1", o.t1}, {"t2", o.t2}, {"delta1", o.d1}};
  r.manifest().settings = {{"d2_range", range_json(d2)}, {"n", n}, {"nk", nk}};
  r.emit(".csv", nu_line_csv(line));
  r.emit_json(".json", {{"params", r.manifest().params}, {"jumps", line.jumps}});
  r.emit_svg(".svg", [&] {
    plot::Series s{"", {}, {}, plot::Mark::Line};
    for (const auto& pt : line.points) {
      s.x.push_back(pt.delta2);
      s.y.push_back(pt.nu.value_or(NAN));
    }
    return plot::render({"nu along the cut", "delta2", "nu", {s}});
  });
  return r.finish();
}

int cmd_u_t2(const Options& o, std::ostream& out) {
  Runner r("phase u-t2", o, out);
  const Range u = parse_range(o.range_a.empty() ? "0,3" : o.range_a, "u-range");
  const Range t2 = parse_range(o.range_b.empty() ? "0,3" : o.range_b, "t2-range");
  const std::size_t n = r.n(50);
  const int cells = r.cells();
  const auto [zeros, winding] = sweep_u_t2(o.t1, u, t2, n, cells, o.zero_tol);

  const json params = {{"t1", o.t1}};
  r.manifest().params = params;
  r.manifest().settings = {
      {"u_range", range_json(u)}, {"t2_range", range_json(t2)}, {"n", n},
      {"cells", cells}, {"zero_tol", o.zero_tol}};
  r.emit(".zero_modes.csv", grid_csv(zeros));
  r.emit_json(".zero_modes.json", grid_header(zeros, params, o.seed));
  r.emit(".nu.csv", grid_csv(winding));
  r.emit_json(".nu.json", grid_header(winding, params, o.seed));
  r.emit_svg(".zero_modes.svg", [&] { return plot::heatmap(zeros, "zero-energy modes (OBC)"); });
  r.emit_svg(".nu.svg", [&] { return plot::heatmap(winding, "winding number nu"); });
  return r.finish();
}

int cmd_nu_prime(const Options& o, std::ostream& out) {
  Runner r("phase nu-prime", o, out);
  const Range u = parse_range(o.range_a.empty() ? "0,4" : o.range_a, "u-range");
  const std::size_t n = r.n(500);
  const auto curve = sweep_nu_prime(o.t1, o.t2, u, n);

  r.manifest().params = {{"t1", o.t1}, {"t2", o.t2}};
  r.manifest().settings = {{"u_range", range_json(u)}, {"n", n}, {"mc_samples", o.mc_samples}};

  std::string csv;
  std::vector<double> mc;
  if (o.mc_samples > 0) {
    CsvTable t{"u", "nu_prime", "nu_prime_mc"};
    for (const auto& [ui, v] : curve) {
      mc.push_back(winding_nu_prime_oracle(imaginary_potential(o.t1, o.t2, ui),
                                           o.mc_samples, o.seed));
      t.row({ui, v, mc.back()});
    }
    csv = t.str();
  } else {
    csv = curve_csv("u", "nu_prime", curve);
  }
  const auto [lo, hi] = reality_interval(imaginary_potential(o.t1, o.t2, 0.0));
  r.emit(".csv", csv);
  r.emit_json(".json", {{"params", r.manifest().params},
                        {"plateau_end", lo},
                        {"zero_from", hi}});
  r.emit_svg(".svg", [&] {
    plot::Series s{"nu'", {}, {}, plot::Mark::Line};
    for (const auto& [ui, v] : curve) {
      s.x.push_back(ui);
      s.y.push_back(v);
    }
    plot::Figure f{"nu' vs u", "u", "nu'", {s}};
    if (!mc.empty()) f.series.push_back({"Monte Carlo", s.x, mc, plot::Mark::Dots});
    return plot::render(f);
  });
  return r.finish();
}

int cmd_reality(const Options& o, std::ostream& out) {
  Runner r("phase reality", o, out);
  const Range u = parse_range(o.range_a.empty() ? "0,4" : o.range_a, "u-range");
  const std::size_t n = r.n(400);
  const std::size_t nk = r.nk(kDefaultWindingGrid);
  const auto sweep = sweep_reality(o.t1, o.t2, u, n, nk);
  const auto [lo, hi] = reality_interval(imaginary_potential(o.t1, o.t2, 0.0));

  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  r.manifest().params = {{"t1", o.t1}, {"t2", o.t2}};
  r.manifest().settings = {{"u_range", range_json(u)}, {"n", n}, {"nk", nk}};
  r.emit(".csv", reality_csv(sweep));
  r.emit_json(".json", {{"params", r.manifest().params},
                        {"u_low", opt(sweep.u_low)},
                        {"u_high", opt(sweep.u_high)},
                        {"grid_step", Axis{"u", u.min, u.max, n}.step()},
                        {"expected_interval", {lo, hi}}});
  r.emit_svg(".svg", [&] {
    plot::Series re{"real", {}, {}, plot::Mark::Line};
    plot::Series im{"imaginary", {}, {}, plot::Mark::Line};
    plot::Series cx{"complex", {}, {}, plot::Mark::Line};
    for (const auto& [ui, rep] : sweep.rows) {
      const double total = static_cast<double>(rep.total());
      for (auto* s : {&re, &im, &cx}) s->x.push_back(ui);
      re.y.push_back(rep.n_real / total);
      im.y.push_back(rep.n_imaginary / total);
      cx.y.push_back(rep.n_complex / total);
    }
    return plot::render({"Eigenvalue classes vs u", "u", "fraction", {re, im, cx}});
  });
  return r.finish();
}

void add_model_flags(CLI::App* app, Options& o) {
  app->add_option("--model", o.model, "nr (non-reciprocal) or pt (imaginary potential)");
  app->add_option("--t1", o.t1, "intra-cell hopping")->capture_default_str();
  app->add_option("--t2", o.t2, "inter-cell hopping")->capture_default_str();
  app->add_option("--d1", o.d1, "intra-cell non-reciprocity")->capture_default_str();
  app->add_option("--d2", o.d2, "inter-cell non-reciprocity")->capture_default_str();
  app->add_option("--u", o.u, "imaginary staggered potential")->capture_default_str();
}

void add_run_flags(CLI::App* app, Options& o) {
  app->add_option("--cells", o.cells, "unit cells of the open chain")->capture_default_str();
  app->add_option("--nk", o.nk, "k points (0: command default)");
  app->add_option("--out", o.out, "output prefix")->required();
  app->add_option("--seed", o.seed, "seed for sampled checks")->capture_default_str();
  app->add_flag("--plot", o.plot, "also write SVG plots");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-Hermitian SSH toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Options o;
  std::function<int()> action;

  auto* band = app.add_subcommand("band", "Re/Im E(k) of both Bloch bands");
  add_model_flags(band, o);
  add_run_flags(band, o);
  band->callback([&] { action = [&] { return cmd_band(o, out); }; });

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues under PBC or OBC");
  add_model_flags(spectrum, o);
  add_run_flags(spectrum, o);
  spectrum->add_option("--boundary", o.boundary, "obc or pbc")->capture_default_str();
  spectrum->add_flag("--vectors", o.vectors, "include eigenvectors in the JSON");
  spectrum->add_option("--zero-tol", o.zero_tol, "|E| below this counts as a zero mode")
      ->capture_default_str();
  spectrum->callback([&] { action = [&] { return cmd_spectrum(o, out); }; });

  auto* skin = app.add_subcommand("skin", "edge localization of OBC eigenstates");
  add_model_flags(skin, o);
  add_run_flags(skin, o);
  skin->add_option("--edge-fraction", o.thresholds.edge_fraction)->capture_default_str();
  skin->add_option("--state-weight", o.thresholds.state_weight)->capture_default_str();
  skin->add_option("--population", o.thresholds.population)->capture_default_str();
  skin->callback([&] { action = [&] { return cmd_skin(o, out); }; });

  auto* berry = app.add_subcommand("berry", "complex Berry phase of the PT model");
  add_model_flags(berry, o);
  add_run_flags(berry, o);
  berry->callback([&] { action = [&] { return cmd_berry(o, out); }; });

  auto* phase = app.add_subcommand("phase", "phase diagrams and parameter scans");
  phase->require_subcommand(1);
  auto sweep_cmd = [&](const char* name, const char* help, int (*fn)(const Options&, std::ostream&),
                       const char* range_a, const char* range_b) {
    auto* sub = phase->add_subcommand(name, help);
    add_model_flags(sub, o);
    add_run_flags(sub, o);
    sub->add_option("--n", o.n, "points per axis (0: command default)");
    if (range_a) sub->add_option(range_a, o.range_a, "min,max");
    if (range_b) sub->add_option(range_b, o.range_b, "min,max");
    if (std::string_view(name) == "u-t2") {
      sub->add_option("--zero-tol", o.zero_tol, "|E| below this counts as a zero mode")
          ->capture_default_str();
    }
    if (std::string_view(name) == "nu-prime") {
      sub->add_option("--mc-samples", o.mc_samples, "Monte-Carlo arc samples per u");
    }
    sub->callback([&, fn] { action = [&, fn] { return fn(o, out); }; });
  };
  sweep_cmd("delta-plane", "nu over (delta1, delta2)", cmd_delta_plane, "--d1-range", "--d2-range");
  sweep_cmd("nu-line", "nu along delta2 at fixed delta1", cmd_nu_line, "--d2-range", nullptr);
  sweep_cmd("u-t2", "zero modes and nu over (u, t2)", cmd_u_t2, "--u-range", "--t2-range");
  sweep_cmd("nu-prime", "arc winding nu' vs u", cmd_nu_prime, "--u-range", nullptr);
  sweep_cmd("reality", "real/imaginary/complex eigenvalue counts vs u", cmd_reality,
            "--u-range", nullptr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArguments;
  }

  try {
    return action ? action() : kInvalidArguments;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace nhssh::cli
