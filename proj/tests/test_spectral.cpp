#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "nhssh/error.hpp"
#include "nhssh/skin.hpp"
#include "nhssh/spectral.hpp"
#include "support.hpp"

using namespace nhssh;
using nhssh::test::kPi;

namespace {

double max_abs_imag(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, std::abs(e.imag()));
  return m;
}

double biorthogonality_error(const Spectrum& s) {
  const Eigen::MatrixXcd g = s.left_vectors.adjoint() * s.right_vectors;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (s.near_defective[static_cast<std::size_t>(i)] ||
          s.near_defective[static_cast<std::size_t>(j)]) {
        continue;
      }
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::size_t count_near(std::span<const cplx> v, cplx target, double tol) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [&](cplx e) { return std::abs(e - target) < tol; }));
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("identity and Jordan block") {
  const auto id = eig_general(Eigen::MatrixXcd::Identity(4, 4));
  REQUIRE(id.size() == 4);
  for (const auto& e : id.eigenvalues) CHECK(std::abs(e - 1.0) < 1e-15);
  CHECK(id.residual < 1e-14);
  CHECK_FALSE(id.any_defective());

  Eigen::MatrixXcd j(2, 2);
  j << 0, 1, 0, 0;
  const auto jd = eig_general(j);
  CHECK(std::abs(jd.eigenvalues[0]) < 1e-12);
  CHECK(std::abs(jd.eigenvalues[1]) < 1e-12);
  CHECK(jd.any_defective());
  CHECK(jd.near_defective[0]);
  CHECK(jd.near_defective[1]);
}

TEST_CASE("eigensolver input validation") {
  CHECK_THROWS_AS(eig_general(Eigen::MatrixXcd::Zero(2, 3)), InvalidArgument);
  CHECK_THROWS_AS(eig_general(Eigen::MatrixXcd(0, 0)), InvalidArgument);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = NAN;
  CHECK_THROWS_AS(eig_general(bad), InvalidArgument);
}

TEST_CASE("Bloch matrix at k = 0 has eigenvalues +-3") {
  const auto s = eig_general(bloch_matrix(non_reciprocal(1, 2, 0.5, 0.5), 0.0).entries);
  CHECK(test::multiset_distance(s.eigenvalues, {3.0, -3.0}) < 1e-13);
}

TEST_CASE("balancing scales are centred") {
  const auto x = balancing_scales(open_chain_hamiltonian(non_reciprocal(1, 2, 0.5, 1.3), 20));
  CHECK(std::abs(x.mean()) < 1e-12);
  CHECK(x(x.size() - 1) - x(0) > 1.0);
}

TEST_CASE("PBC spectra of the PT model") {
  const auto k = brillouin_grid(512);
  auto real = flatten(pbc_spectrum(imaginary_potential(1, 2, 0.5), k));
  CHECK(classify_reality(real, bloch_reality_tolerance(real)).all_real());
  auto imag = flatten(pbc_spectrum(imaginary_potential(1, 2, 3.5), k));
  const auto r = classify_reality(imag, bloch_reality_tolerance(imag));
  CHECK(r.n_imaginary == imag.size());
  auto herm = flatten(pbc_spectrum(non_reciprocal(1, 2, 0, 0), k));
  CHECK(max_abs_imag(herm) == 0.0);
  CHECK_THROWS_AS(pbc_spectrum(non_reciprocal(1, 2, 0, 0), std::vector<double>{}),
                  InvalidArgument);
}

TEST_CASE("PBC spectrum agrees with the dispersion") {
  const auto p = non_reciprocal(1, 2, 0.6, 1.3);
  const auto k = brillouin_path(101);
  const auto bands = pbc_spectrum(p, k);
  for (std::size_t j = 0; j < k.size(); ++j) {
    const auto e = dispersion(p, k[j]);
    CHECK(std::abs(bands[j].e_plus - e.plus) < 1e-13);
    CHECK(std::abs(bands[j].e_minus - e.minus) < 1e-13);
  }
}

TEST_CASE("OBC spectra of the reference parameter sets") {
  const auto nr = obc_spectrum(non_reciprocal(1, 2, 0.5, 0.3), 50);
  CHECK(max_abs_imag(nr.eigenvalues) < 1e-8);
  CHECK(zero_modes(nr.eigenvalues, 1e-6).size() == 2);

  const auto pt = obc_spectrum(imaginary_potential(1, 2, 2), 50);
  CHECK(count_near(pt.eigenvalues, cplx(0, 2), 1e-6) == 1);
  CHECK(count_near(pt.eigenvalues, cplx(0, -2), 1e-6) == 1);

  const auto triv = obc_spectrum(imaginary_potential(1, 0.5, 2), 50);
  const auto prof = localization_profile(triv, 100);
  for (std::size_t i = 0; i < triv.size(); ++i) {
    const bool near = std::abs(triv.eigenvalues[i] - cplx(0, 2)) < 1e-3 ||
                      std::abs(triv.eigenvalues[i] - cplx(0, -2)) < 1e-3;
    CHECK_FALSE((near && prof.per_state_edge_weight[i].total() > 0.6));
  }
}

TEST_CASE("zero-mode counts") {
  CHECK(zero_modes(obc_spectrum(non_reciprocal(1, 2, 0.5, 1.3), 50).eigenvalues).size() == 2);
  CHECK(zero_modes(obc_spectrum(non_reciprocal(1, 0.5, 0.5, 0.3), 50).eigenvalues).empty());
  for (double t2 : {0.5, 2.0}) {
    CHECK(zero_modes(obc_spectrum(imaginary_potential(1, t2, 1), 50).eigenvalues).empty());
  }
  const std::vector<cplx> v{0.0, 1e-7, 1.0};
  CHECK_THROWS_AS(zero_modes(v, 0.0), InvalidArgument);
}

TEST_CASE("reality classification") {
  const auto k = brillouin_grid(1000);
  auto classify = [&](double u) {
    const auto e = flatten(pbc_spectrum(imaginary_potential(1, 2, u), k));
    return classify_reality(e, bloch_reality_tolerance(e));
  };
  const auto a = classify(0.5);
  CHECK(a.n_complex == 0);
  CHECK(a.n_imaginary == 0);
  const auto b = classify(2.0);
  CHECK(b.n_real > 0);
  CHECK(b.n_imaginary > 0);
  CHECK(b.total() == 2000);
  CHECK(classify(3.5).n_real == 0);

  const std::vector<cplx> mixed{0.0, 1.0, cplx(0, 1), cplx(1, 1), cplx(1e-9, 1e-9)};
  const auto m = classify_reality(mixed, 1e-6);
  CHECK(m.n_real == 3);
  CHECK(m.n_imaginary == 1);
  CHECK(m.n_complex == 1);
}

TEST_CASE("gap classification") {
  const auto k = brillouin_path(401);
  CHECK(gap_classify(pbc_spectrum(non_reciprocal(1, 2, 0.1, 0.1), k)).kind == GapKind::LineGapRe);
  CHECK(gap_classify(pbc_spectrum(non_reciprocal(1, 2, 0.1, 1.2), k)).kind == GapKind::PointGap);
  CHECK(gap_classify(pbc_spectrum(non_reciprocal(1, 1, 0, 0), k)).kind == GapKind::Gapless);
  const auto g = gap_classify(pbc_spectrum(non_reciprocal(1, 2, 0.1, 0.1), k));
  CHECK(g.margin > 0.0);
  CHECK_THROWS_AS(gap_classify(pbc_spectrum(non_reciprocal(1, 2, 0, 0), brillouin_path(100))),
                  InvalidArgument);
}

TEST_CASE("backward error, bi-orthogonality and pairing on random chains") {
  test::Sampler s(21);
  for (int i = 0; i < 40; ++i) {
    const auto p = s.any_params();
    const int cells = 10 + static_cast<int>(s.uniform(0, 30));
    CAPTURE(p.t1);
    CAPTURE(p.t2);
    CAPTURE(p.delta1);
    CAPTURE(p.delta2);
    CAPTURE(p.u);
    const auto sp = obc_spectrum(p, cells);
    CHECK(sp.backward_error < 1e-8);
    CHECK(biorthogonality_error(sp) < 1e-8);
    const auto& e = sp.eigenvalues;
    if (p.kind == ModelKind::NonReciprocal) {
      CHECK(test::multiset_distance(e, test::negated(e)) < 1e-8);
    } else {
      CHECK(test::multiset_distance(e, test::conjugated(e)) < 1e-8);
    }
  }
}

TEST_CASE("split zero modes of a strongly skewed chain keep small residuals") {
  const auto p = non_reciprocal(1.3143845362983062, 2.7998045795137689, 1.2239595040039002,
                                0.3771007162025648);
  for (int cells : {30, 43, 50}) {
    CAPTURE(cells);
    const auto sp = obc_spectrum(p, cells);
    CHECK(sp.backward_error < 1e-12);
    CHECK(zero_modes(sp.eigenvalues).size() == 2);
    for (std::size_t i : zero_modes(sp.eigenvalues)) {
      CHECK(sp.near_defective[i]);
    }
  }
}

TEST_CASE("E, E* pairing of PT Bloch spectra") {
  test::Sampler s(22);
  for (int i = 0; i < 50; ++i) {
    const auto p = imaginary_potential(s.uniform(0.1, 3), s.uniform(0.1, 3), s.uniform(0, 4));
    const auto e = flatten(pbc_spectrum(p, brillouin_grid(64)));
    CHECK(test::multiset_distance(e, test::conjugated(e)) < 1e-8);
  }
}

TEST_CASE("bulk-boundary mismatch of the non-reciprocal chain") {
  const auto p = non_reciprocal(1, 2, 0.5, 0.3);
  CHECK(max_abs_imag(flatten(pbc_spectrum(p, brillouin_grid(400)))) > 0.1);
  CHECK(max_abs_imag(obc_spectrum(p, 50).eigenvalues) < 1e-8);
}

TEST_CASE("PT reality classes agree between PBC and OBC up to the edge pair") {
  for (auto [t2, u] : {std::pair{2.0, 0.5}, std::pair{2.0, 3.5}, std::pair{0.5, 0.25},
                       std::pair{0.5, 2.0}}) {
    CAPTURE(t2);
    CAPTURE(u);
    const auto p = imaginary_potential(1, t2, u);
    const auto bloch = flatten(pbc_spectrum(p, brillouin_grid(400)));
    const auto pbc = classify_reality(bloch, bloch_reality_tolerance(bloch));
    const auto obc_s = obc_spectrum(p, 50);
    const auto obc = classify_reality(obc_s.eigenvalues, kObcRealityTolerance);
    const std::size_t edge = count_near(obc_s.eigenvalues, cplx(0, u), 1e-6) +
                             count_near(obc_s.eigenvalues, cplx(0, -u), 1e-6);
    CHECK((pbc.n_real == 0) == (obc.n_real == 0));
    CHECK((pbc.n_complex == 0) == (obc.n_complex == 0));
    CHECK((pbc.n_imaginary == 0) == (obc.n_imaginary == (t2 > 1 ? edge : 0)));
  }
}

}  // TEST_SUITE
