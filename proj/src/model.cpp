#include "nhssh/model.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nhssh/error.hpp"

namespace nhssh {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_cells(int n_cells, int minimum) {
  if (n_cells < minimum) {
    throw InvalidArgument("chain needs at least " + std::to_string(minimum) +
                          " unit cells, got " + std::to_string(n_cells));
  }
}

// Hoppings in the order (A_n <- B_n, B_n <- A_n, B_n <- A_{n+1}, A_{n+1} <- B_n).
std::array<double, 4> hoppings(const ModelParams& p) {
  if (p.kind == ModelKind::NonReciprocal) {
    return {p.t1 - p.delta1, p.t1 + p.delta1, p.t2 - p.delta2, p.t2 + p.delta2};
  }
  return {p.t1, p.t1, p.t2, p.t2};
}

void fill_chain(const ModelParams& p, int n_cells, bool closed,
                Eigen::MatrixXcd& h) {
  const auto [ab, ba, b_next, next_b] = hoppings(p);
  const Eigen::Index n = n_cells;
  h.setZero(2 * n, 2 * n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index a = 2 * c;
    const Eigen::Index b = a + 1;
    h(a, b) += ab;
    h(b, a) += ba;
    if (p.kind == ModelKind::ImaginaryPotential) {
      h(a, a) = cplx(0.0, p.u);
      h(b, b) = cplx(0.0, -p.u);
    }
    if (c + 1 < n || closed) {
      const Eigen::Index a_next = (a + 2) % (2 * n);
      h(b, a_next) += b_next;
      h(a_next, b) += next_b;
    }
  }
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::NonReciprocal ? "non-reciprocal"
                                          : "imaginary-potential";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "non-reciprocal" || name == "nr" || name == "h1") {
    return ModelKind::NonReciprocal;
  }
  if (name == "imaginary-potential" || name == "pt" || name == "h2") {
    return ModelKind::ImaginaryPotential;
  }
  throw InvalidArgument("unknown model '" + std::string(name) +
                        "' (expected non-reciprocal or imaginary-potential)");
}

ModelParams make_params(ModelKind kind, double t1, double t2, double delta1,
                        double delta2, double u) {
  for (double v : {t1, t2, delta1, delta2, u}) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("model parameters must be finite");
    }
  }
  if (kind == ModelKind::NonReciprocal && u != 0.0) {
    throw InvalidArgument("non-reciprocal model takes no on-site potential u");
  }
  if (kind == ModelKind::ImaginaryPotential &&
      (delta1 != 0.0 || delta2 != 0.0)) {
    throw InvalidArgument(
        "imaginary-potential model takes no non-reciprocity delta1/delta2");
  }
  return ModelParams{kind, t1, t2, delta1, delta2, u};
}

Eigen::Matrix2cd DVector::to_matrix() const {
  const cplx dx = component(0);
  const cplx dy = component(1);
  const cplx dz = component(2);
  Eigen::Matrix2cd m;
  m << dz, dx - kI * dy, dx + kI * dy, -dz;
  return m;
}

BlochMatrix bloch_matrix(const ModelParams& p, double k) {
  const cplx e_minus = std::polar(1.0, -k);
  const cplx e_plus = std::polar(1.0, k);
  Eigen::Matrix2cd m;
  if (p.kind == ModelKind::NonReciprocal) {
    m << 0.0, (p.t1 - p.delta1) + (p.t2 + p.delta2) * e_minus,
        (p.t1 + p.delta1) + (p.t2 - p.delta2) * e_plus, 0.0;
  } else {
    m << cplx(0.0, p.u), p.t1 + p.t2 * e_minus, p.t1 + p.t2 * e_plus,
        cplx(0.0, -p.u);
  }
  return {m, k};
}

DVector d_vector(const ModelParams& p, double k) {
  const double c = std::cos(k);
  const double s = std::sin(k);
  DVector d;
  d.k = k;
  d.real_part = {p.t1 + p.t2 * c, p.t2 * s, 0.0};
  if (p.kind == ModelKind::NonReciprocal) {
    d.imag_part = {-p.delta2 * s, -p.delta1 + p.delta2 * c, 0.0};
  } else {
    d.imag_part = {0.0, 0.0, p.u};
  }
  return d;
}

RadicandCoefficients radicand_coefficients(const ModelParams& p) {
  if (p.kind == ModelKind::NonReciprocal) {
    return {p.t1 * p.t1 + p.t2 * p.t2 - p.delta1 * p.delta1 -
                p.delta2 * p.delta2,
            2.0 * (p.t1 * p.t2 + p.delta1 * p.delta2),
            -2.0 * (p.t1 * p.delta2 + p.t2 * p.delta1)};
  }
  return {p.t1 * p.t1 + p.t2 * p.t2 - p.u * p.u, 2.0 * p.t1 * p.t2, 0.0};
}

cplx principal_sqrt(cplx z) {
  cplx r = std::sqrt(z);
  // std::sqrt lands on -i|.| for negative reals carrying a -0 imaginary part.
  if (r.real() == 0.0 && r.imag() < 0.0) {
    r = -r;
  }
  return r;
}

BandPair dispersion(const ModelParams& p, double k) {
  const auto [a, b, c] = radicand_coefficients(p);
  const cplx e = principal_sqrt(cplx(a + b * std::cos(k), c * std::sin(k)));
  return {e, -e};
}

SymmetryVerdict check_symmetries(const ModelParams& p,
                                 std::span<const double> k_samples,
                                 double tol) {
  if (k_samples.empty()) {
    throw InvalidArgument("symmetry check needs at least one k sample");
  }
  Eigen::Matrix2cd sz, sx;
  sz << 1.0, 0.0, 0.0, -1.0;
  sx << 0.0, 1.0, 1.0, 0.0;
  SymmetryVerdict v;
  for (double k : k_samples) {
    const Eigen::Matrix2cd h = bloch_matrix(p, k).entries;
    v.chiral_residual = std::max(
        v.chiral_residual, (sz * h * sz + h).cwiseAbs().maxCoeff());
    v.pt_residual = std::max(v.pt_residual,
                             (sx * h * sx - h.conjugate()).cwiseAbs().maxCoeff());
  }
  v.chiral = v.chiral_residual < tol;
  v.pt = v.pt_residual < tol;
  v.max_residual = std::max(v.chiral_residual, v.pt_residual);
  return v;
}

SymmetryVerdict check_symmetries(const ModelParams& p) {
  constexpr int n = 101;
  std::vector<double> ks(n);
  for (int j = 0; j < n; ++j) {
    ks[static_cast<std::size_t>(j)] =
        -std::numbers::pi + 2.0 * std::numbers::pi * j / (n - 1);
  }
  return check_symmetries(p, ks);
}

Eigen::MatrixXcd open_chain_hamiltonian(const ModelParams& p, int n_cells) {
  require_cells(n_cells, 2);
  Eigen::MatrixXcd h;
  fill_chain(p, n_cells, false, h);
  return h;
}

Eigen::MatrixXcd ring_hamiltonian(const ModelParams& p, int n_cells) {
  require_cells(n_cells, 3);
  Eigen::MatrixXcd h;
  fill_chain(p, n_cells, true, h);
  return h;
}

}  // namespace nhssh
