#include "cookbook.hpp"

namespace nhssh::cli {

namespace {

using Args = std::vector<std::string>;

std::vector<Recipe> build() {
  std::vector<Recipe> r;
  auto add = [&](std::string fig, std::string name, std::string caption, Args args,
                 Args reduced) {
    r.push_back({std::move(fig), std::move(name), std::move(caption), std::move(args),
                 std::move(reduced)});
  };

  const Args plane_small{"--n", "30"};
  add("3(a)", "fig03a_delta_plane_t2_2", "nu over (delta1, delta2), t1=1, t2=2",
      {"phase", "delta-plane", "--t1", "1", "--t2", "2", "--d1-range", "-2,2",
       "--d2-range", "-2,2", "--n", "100"},
      plane_small);
  add("3(b)", "fig03b_delta_plane_t2_0.5", "nu over (delta1, delta2), t1=1, t2=0.5",
      {"phase", "delta-plane", "--t1", "1", "--t2", "0.5", "--d1-range", "-2,2",
       "--d2-range", "-2,2", "--n", "100"},
      plane_small);
  add("3(c)", "fig03c_nu_line_t2_2", "jump of nu from 1 to 0.5 at delta2=0.5",
      {"phase", "nu-line", "--t1", "1", "--t2", "2", "--d1", "0.5", "--d2-range", "0,1.5",
       "--n", "200"},
      {"--n", "61", "--nk", "1024"});
  add("3(d)", "fig03d_nu_line_t2_0.5", "jump of nu from 0 to 0.5 at delta2=0.25",
      {"phase", "nu-line", "--t1", "1", "--t2", "0.5", "--d1", "0.25", "--d2-range", "0,1",
       "--n", "200"},
      {"--n", "61", "--nk", "1024"});

  const Args band_small{"--nk", "101"};
  auto nr_band = [&](std::string fig, std::string t2, std::string d1, std::string d2) {
    add(fig, "fig04" + fig.substr(2, 1) + "_band_t2_" + t2 + "_d2_" + d2,
        "Re E(k), t1=1, t2=" + t2 + ", delta1=" + d1 + ", delta2=" + d2,
        {"band", "--model", "nr", "--t1", "1", "--t2", t2, "--d1", d1, "--d2", d2, "--nk",
         "401"},
        band_small);
  };
  nr_band("4(a)", "2", "0.1", "0.1");
  nr_band("4(b)", "2", "0.1", "1.2");
  nr_band("4(c)", "0.5", "0.3", "0.1");
  nr_band("4(d)", "0.5", "0.3", "0.45");

  const Args spec_small{"--cells", "20", "--nk", "101"};
  auto nr_spectrum = [&](std::string fig, std::string stem, std::string t2, std::string d1,
                         std::string d2, std::string boundary) {
    add(fig, stem, boundary + " spectrum, t1=1, t2=" + t2 + ", delta1=" + d1 + ", delta2=" + d2,
        {"spectrum", "--model", "nr", "--t1", "1", "--t2", t2, "--d1", d1, "--d2", d2,
         "--boundary", boundary, "--cells", "50", "--nk", "401"},
        spec_small);
  };
  nr_spectrum("5(a)", "fig05a_pbc_nu1", "2", "0.5", "0.3", "pbc");
  nr_spectrum("5(b)", "fig05b_obc_nu1", "2", "0.5", "0.3", "obc");
  nr_spectrum("5(c)", "fig05c_pbc_nu0.5", "2", "0.6", "1.3", "pbc");
  nr_spectrum("5(d)", "fig05d_obc_nu0.5", "2", "0.6", "1.3", "obc");
  nr_spectrum("6(a)", "fig06a_pbc_nu0", "0.5", "0.3", "0.15", "pbc");
  nr_spectrum("6(b)", "fig06b_obc_nu0", "0.5", "0.3", "0.15", "obc");
  nr_spectrum("6(c)", "fig06c_pbc_nu0.5", "0.5", "0.5", "0.3", "pbc");
  nr_spectrum("6(d)", "fig06d_obc_nu0.5", "0.5", "0.5", "0.3", "obc");

  const Args skin_small{"--cells", "20"};
  add("7(a)", "fig07a_skin_t2_2", "skin effect, t1=1, t2=2, delta1=0.5, delta2=1.3",
      {"skin", "--model", "nr", "--t1", "1", "--t2", "2", "--d1", "0.5", "--d2", "1.3",
       "--cells", "50"},
      skin_small);
  add("7(b)", "fig07b_skin_t2_0.5", "skin effect, t1=1, t2=0.5, delta1=0.5, delta2=0.3",
      {"skin", "--model", "nr", "--t1", "1", "--t2", "0.5", "--d1", "0.5", "--d2", "0.3",
       "--cells", "50"},
      skin_small);

  add("8(d)", "fig08d_nu_prime", "nu' vs u with Monte-Carlo arc fractions, t1=1, t2=2",
      {"phase", "nu-prime", "--t1", "1", "--t2", "2", "--u-range", "0,4", "--n", "500",
       "--mc-samples", "100000"},
      {"--n", "51", "--mc-samples", "2000"});

  add("9", "fig09_u_t2", "zero-mode count and nu over (u, t2), t1=1",
      {"phase", "u-t2", "--t1", "1", "--u-range", "0,3", "--t2-range", "0,3", "--n", "50",
       "--cells", "50"},
      {"--n", "7", "--cells", "12"});

  auto pt_band = [&](std::string fig, std::string t2, std::string u) {
    add(fig, "fig10_band_t2_" + t2 + "_u_" + u, "Re E(k), PT model, t1=1, t2=" + t2 + ", u=" + u,
        {"band", "--model", "pt", "--t1", "1", "--t2", t2, "--u", u, "--nk", "401"},
        band_small);
  };
  for (const char* u : {"0.5", "2", "3.5"}) pt_band("10", "2", u);
  for (const char* u : {"0.25", "1", "1.75"}) pt_band("10", "0.5", u);

  auto pt_spectrum = [&](std::string fig, std::string t2, std::string u,
                         std::string boundary) {
    add(fig, "fig11_" + boundary + "_t2_" + t2 + "_u_" + u,
        boundary + " spectrum, PT model, t1=1, t2=" + t2 + ", u=" + u,
        {"spectrum", "--model", "pt", "--t1", "1", "--t2", t2, "--u", u, "--boundary",
         boundary, "--cells", "50", "--nk", "401"},
        spec_small);
  };
  const char* panels_2[] = {"(a)", "(b)", "(c)", "(d)", "(e)", "(f)"};
  int panel = 0;
  for (const char* u : {"0.5", "2", "3.5"}) {
    pt_spectrum(std::string("11") + panels_2[panel++], "2", u, "pbc");
    pt_spectrum(std::string("11") + panels_2[panel++], "2", u, "obc");
  }
  for (const char* u : {"0.25", "1", "1.75"}) {
    pt_spectrum("11 (t2=0.5 set)", "0.5", u, "pbc");
    pt_spectrum("11 (t2=0.5 set)", "0.5", u, "obc");
  }

  add("12", "fig12_reality_t2_2", "real/imaginary/complex eigenvalue fractions vs u, t1=1, t2=2",
      {"phase", "reality", "--t1", "1", "--t2", "2", "--u-range", "0,4", "--n", "400"},
      {"--n", "81", "--nk", "512"});
  add("12", "fig12_reality_t2_0.5",
      "real/imaginary/complex eigenvalue fractions vs u, t1=1, t2=0.5",
      {"phase", "reality", "--t1", "1", "--t2", "0.5", "--u-range", "0,4", "--n", "400"},
      {"--n", "81", "--nk", "512"});

  add("13(a)", "fig13a_no_skin_t2_2", "no skin effect, PT model, t1=1, t2=2, u=2",
      {"skin", "--model", "pt", "--t1", "1", "--t2", "2", "--u", "2", "--cells", "50"},
      skin_small);
  add("13(b)", "fig13b_no_skin_t2_0.5", "no skin effect, PT model, t1=1, t2=0.5, u=1",
      {"skin", "--model", "pt", "--t1", "1", "--t2", "0.5", "--u", "1", "--cells", "50"},
      skin_small);

  add("Berry", "berry_t2_2", "complex Berry phase, t1=1, t2=2, u=0.5 (2 pi)",
      {"berry", "--t1", "1", "--t2", "2", "--u", "0.5", "--nk", "4096"}, {"--nk", "1024"});
  add("Berry", "berry_t2_0.5", "complex Berry phase, t1=1, t2=0.5, u=0.2 (0)",
      {"berry", "--t1", "1", "--t2", "0.5", "--u", "0.2", "--nk", "4096"}, {"--nk", "1024"});
  return r;
}

}  // namespace

const std::vector<Recipe>& cookbook() {
  static const std::vector<Recipe> recipes = build();
  return recipes;
}

std::vector<std::string> recipe_argv(const Recipe& r, const std::string& out_prefix,
                                     bool reduced) {
  std::vector<std::string> argv{"nhssh"};
  argv.insert(argv.end(), r.args.begin(), r.args.end());
  argv.push_back("--out");
  argv.push_back(out_prefix);
  argv.push_back("--plot");
  if (reduced) argv.insert(argv.end(), r.reduced.begin(), r.reduced.end());
  return argv;
}

}  // namespace nhssh::cli
