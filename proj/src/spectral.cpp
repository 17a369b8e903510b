#include "nhssh/spectral.hpp"

#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "nhssh/error.hpp"
#include "nhssh/kernels.hpp"

namespace nhssh {

namespace {

constexpr double kScaleLimit = 300.0;  // |log d_i| cap, keeps D finite

// Eigenvalues closer than this (relative to the spectral radius) are treated
// as one cluster when pairing left and right eigenvectors.
constexpr double kClusterTolerance = 1e-8;

std::vector<std::vector<Eigen::Index>> cluster_eigenvalues(
    const std::vector<cplx>& e) {
  const auto n = static_cast<Eigen::Index>(e.size());
  double scale = 1.0;
  for (const cplx& v : e) scale = std::max(scale, std::abs(v));
  const double tol = kClusterTolerance * scale;

  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      auto& p = parent[static_cast<std::size_t>(i)];
      p = parent[static_cast<std::size_t>(p)];
      i = p;
    }
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(e[static_cast<std::size_t>(i)] -
                   e[static_cast<std::size_t>(j)]) <= tol) {
        parent[static_cast<std::size_t>(find(j))] = find(i);
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index root = find(i);
    auto& s = slot[static_cast<std::size_t>(root)];
    if (s < 0) {
      s = static_cast<Eigen::Index>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(s)].push_back(i);
  }
  return groups;
}

Eigen::MatrixXcd gather(const Eigen::MatrixXcd& m,
                        const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXcd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = m.col(cols[c]);
  }
  return out;
}

// Residual above which a back-transformed eigenvector is refined.
constexpr double kRefineResidual = 1e-12;

// A few steps of shifted inverse iteration; returns a unit vector. The shift
// is nudged off an exactly singular pivot.
Eigen::VectorXcd inverse_iteration(const Eigen::MatrixXcd& h, cplx shift,
                                   Eigen::VectorXcd v) {
  const Eigen::Index n = h.rows();
  const double nudge = std::numeric_limits<double>::epsilon() *
                       std::max(1.0, h.cwiseAbs().maxCoeff());
  Eigen::MatrixXcd a = h;
  a.diagonal().array() -= shift;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (!lu.solve(v).allFinite()) {
    a.diagonal().array() -= nudge;
    lu.compute(a);
  }
  if (v.norm() == 0.0) v = Eigen::VectorXcd::Ones(n);
  for (int it = 0; it < 3; ++it) {
    const Eigen::VectorXcd next = lu.solve(v);
    if (!next.allFinite() || next.norm() == 0.0) break;
    v = next.normalized();
  }
  return v;
}

double smallest_singular_value(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

std::string_view to_string(Boundary b) {
  return b == Boundary::PBC ? "pbc" : "obc";
}

std::string_view to_string(GapKind kind) {
  switch (kind) {
    case GapKind::PointGap:
      return "point-gap";
    case GapKind::LineGapRe:
      return "line-gap-re";
    case GapKind::LineGapIm:
      return "line-gap-im";
    case GapKind::Gapless:
      break;
  }
  return "gapless";
}

bool Spectrum::any_defective() const {
  return std::find(near_defective.begin(), near_defective.end(), true) !=
         near_defective.end();
}

double Spectrum::spectral_radius() const {
  double r = 0.0;
  for (const cplx& e : eigenvalues) r = std::max(r, std::abs(e));
  return r;
}

Eigen::VectorXd balancing_scales(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd w = h.cwiseAbs2();
  w.diagonal().setZero();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (n < 2) return x;

  // f(x) = sum_ij w_ij exp(2 (x_j - x_i)) is convex; Newton with backtracking.
  auto scaled = [&](const Eigen::VectorXd& s) {
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        out(i, j) = w(i, j) == 0.0 ? 0.0 : w(i, j) * std::exp(2.0 * (s(j) - s(i)));
      }
    }
    return out;
  };

  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::MatrixXd s = scaled(x);
    const Eigen::VectorXd col = s.colwise().sum().transpose();
    const Eigen::VectorXd row = s.rowwise().sum();
    const double f = s.sum();
    if (f == 0.0) break;

    double imbalance = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
      const double total = col(m) + row(m);
      if (total > 0.0) {
        imbalance = std::max(imbalance, std::abs(col(m) - row(m)) / total);
      }
    }
    if (imbalance < 1e-13) break;

    const Eigen::VectorXd g = 2.0 * (col - row);
    const Eigen::MatrixXd sym = s + s.transpose();
    Eigen::MatrixXd hess = -4.0 * sym;
    hess.diagonal() = 4.0 * sym.rowwise().sum();
    // The Laplacian is singular along constant shifts (and along each
    // disconnected block); a tiny ridge picks the minimum-norm step.
    hess.diagonal().array() += 1e-12 * hess.diagonal().maxCoeff() + 1e-300;
    const Eigen::VectorXd step = hess.ldlt().solve(-g);
    const double slope = g.dot(step);
    if (!(slope < 0.0)) break;

    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Eigen::VectorXd trial = x + t * step;
      if (scaled(trial).sum() <= f + 1e-4 * t * slope) {
        x = trial;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  x.array() -= x.mean();
  return x.cwiseMax(-kScaleLimit).cwiseMin(kScaleLimit);
}

Spectrum eig_general(const Eigen::MatrixXcd& h, EigOptions options) {
  const Eigen::Index n = h.rows();
  if (n != h.cols()) {
    throw InvalidArgument("eigendecomposition needs a square matrix, got " +
                          std::to_string(h.rows()) + "x" +
                          std::to_string(h.cols()));
  }
  if (n < 1) {
    throw InvalidArgument("eigendecomposition needs a non-empty matrix");
  }
  if (!h.allFinite()) {
    throw InvalidArgument("matrix has non-finite entries");
  }

  Eigen::VectorXd scales = Eigen::VectorXd::Zero(n);
  if (options.balance) scales = balancing_scales(h);
  const Eigen::VectorXd d = scales.array().exp();
  const Eigen::VectorXd d_inv = (-scales.array()).exp();

  Eigen::MatrixXcd a = d_inv.asDiagonal() * h * d.asDiagonal();
  Eigen::VectorXcd w(n);
  Eigen::MatrixXcd vl, vr;
  const char job = options.vectors ? 'V' : 'N';
  if (options.vectors) {
    vl.resize(n, n);
    vr.resize(n, n);
  }
  const auto ld = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, job, job, ld, a.data(), ld, w.data(),
      options.vectors ? vl.data() : nullptr, ld,
      options.vectors ? vr.data() : nullptr, ld);
  if (info > 0) {
    throw EigenFailure("zgeev: QR iteration failed to converge (" +
                       std::to_string(info) +
                       " eigenvalues unresolved after LAPACK's 30n sweep cap)");
  }
  if (info < 0) {
    throw EigenFailure("zgeev: illegal argument " + std::to_string(-info));
  }

  Spectrum out;
  out.eigenvalues.assign(w.data(), w.data() + n);
  if (!options.vectors) return out;

  const auto groups = cluster_eigenvalues(out.eigenvalues);
  const auto nn = static_cast<std::size_t>(n);
  out.overlaps.assign(nn, 0.0);
  out.near_defective.assign(nn, false);
  out.condition.assign(nn, std::numeric_limits<double>::infinity());

  // Defectiveness is judged in the balanced basis, where zgeev's vectors are
  // unit-norm and the overlap is not polluted by the diagonal scaling.
  for (const auto& g : groups) {
    const Eigen::MatrixXcd m = gather(vl, g).adjoint() * gather(vr, g);
    const double s = smallest_singular_value(m);
    for (Eigen::Index i : g) {
      out.overlaps[static_cast<std::size_t>(i)] = s;
      out.near_defective[static_cast<std::size_t>(i)] = s < kDefectiveOverlap;
    }
  }

  out.right_vectors = d.asDiagonal() * vr;
  out.left_vectors = d_inv.asDiagonal() * vl;
  out.right_vectors.colwise().normalize();
  out.left_vectors.colwise().normalize();

  // Undoing a wide scaling can amplify roundoff inside near-degenerate
  // clusters (the split zero modes of a long skin-effect chain). Such columns
  // get inverse iteration against the unbalanced matrix.
  const Eigen::MatrixXcd r0 = h * out.right_vectors - out.right_vectors * w.asDiagonal();
  std::vector<bool> refined(nn, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r0.col(i).norm() <= kRefineResidual * std::max(1.0, std::abs(w(i)))) continue;
    out.right_vectors.col(i) = inverse_iteration(h, w(i), out.right_vectors.col(i));
    out.left_vectors.col(i) =
        inverse_iteration(h.adjoint(), std::conj(w(i)), out.left_vectors.col(i));
    refined[static_cast<std::size_t>(i)] = true;
  }

  for (const auto& g : groups) {
    const Eigen::MatrixXcd u = gather(out.left_vectors, g);
    const Eigen::MatrixXcd v = gather(out.right_vectors, g);
    const Eigen::MatrixXcd m = u.adjoint() * v;
    const bool touched = std::any_of(g.begin(), g.end(), [&](Eigen::Index i) {
      return refined[static_cast<std::size_t>(i)];
    });
    if (touched && smallest_singular_value(m) < kDefectiveOverlap) {
      for (Eigen::Index i : g) out.near_defective[static_cast<std::size_t>(i)] = true;
    }
    if (out.near_defective[static_cast<std::size_t>(g.front())]) continue;
    const Eigen::MatrixXcd fixed = u * m.inverse().adjoint();
    for (std::size_t c = 0; c < g.size(); ++c) {
      out.left_vectors.col(g[c]) = fixed.col(static_cast<Eigen::Index>(c));
      out.condition[static_cast<std::size_t>(g[c])] =
          fixed.col(static_cast<Eigen::Index>(c)).norm();
    }
  }

  const Eigen::MatrixXcd r =
      h * out.right_vectors - out.right_vectors * w.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double res = r.col(i).norm();
    out.residual = std::max(out.residual, res);
    out.backward_error =
        std::max(out.backward_error, res / std::max(1.0, std::abs(w(i))));
  }
  return out;
}

std::vector<double> brillouin_grid(std::size_t n) {
  if (n == 0) throw InvalidArgument("k grid must be non-empty");
  std::vector<double> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    k[j] = -std::numbers::pi +
           2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
  }
  return k;
}

std::vector<double> brillouin_path(std::size_t n) {
  if (n < 2) throw InvalidArgument("k path needs at least two points");
  std::vector<double> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    k[j] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) /
                                   static_cast<double>(n - 1);
  }
  k.back() = std::numbers::pi;
  return k;
}

std::vector<BandPoint> pbc_spectrum(const ModelParams& p,
                                    std::span<const double> k_grid) {
  if (k_grid.empty()) throw InvalidArgument("k grid must be non-empty");
  const std::size_t n = k_grid.size();
  std::vector<double> c(n), s(n), re(n), im(n);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = std::cos(k_grid[j]);
    s[j] = std::sin(k_grid[j]);
  }
  const auto coeff = radicand_coefficients(p);
  kernels::active().radicand(c.data(), s.data(), n, coeff.a, coeff.b, coeff.c,
                             re.data(), im.data());
  std::vector<BandPoint> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx e = principal_sqrt(cplx(re[j], im[j]));
    out[j] = {k_grid[j], e, -e};
  }
  return out;
}

std::vector<cplx> flatten(std::span<const BandPoint> bands) {
  std::vector<cplx> out;
  out.reserve(2 * bands.size());
  for (const auto& b : bands) out.push_back(b.e_plus);
  for (const auto& b : bands) out.push_back(b.e_minus);
  return out;
}

Spectrum obc_spectrum(const ModelParams& p, int n_cells, EigOptions options) {
  Spectrum s = eig_general(open_chain_hamiltonian(p, n_cells), options);
  s.boundary = Boundary::OBC;
  return s;
}

std::vector<std::size_t> zero_modes(std::span<const cplx> eigenvalues,
                                    double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("zero-mode tolerance must be > 0");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues[i]) < tol) idx.push_back(i);
  }
  return idx;
}

RealityReport classify_reality(std::span<const cplx> eigenvalues, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("reality tolerance must be > 0");
  RealityReport r;
  r.tol = tol;
  for (const cplx& e : eigenvalues) {
    if (std::abs(e.imag()) < tol) {
      ++r.n_real;
    } else if (std::abs(e.real()) < tol) {
      ++r.n_imaginary;
    } else {
      ++r.n_complex;
    }
  }
  return r;
}

double bloch_reality_tolerance(std::span<const cplx> eigenvalues) {
  double radius = 1.0;
  for (const cplx& e : eigenvalues) radius = std::max(radius, std::abs(e));
  return kBlochRealityTolerance * radius;
}

GapClass gap_classify(std::span<const BandPoint> bands, double tol) {
  if (bands.size() < kMinGapGrid) {
    throw InvalidArgument("gap classification needs at least " +
                          std::to_string(kMinGapGrid) + " k points, got " +
                          std::to_string(bands.size()));
  }
  double min_re = std::numeric_limits<double>::infinity();
  double min_im = min_re;
  double min_abs = min_re;
  for (const auto& b : bands) {
    for (const cplx& e : {b.e_plus, b.e_minus}) {
      min_re = std::min(min_re, std::abs(e.real()));
      min_im = std::min(min_im, std::abs(e.imag()));
      min_abs = std::min(min_abs, std::abs(e));
    }
  }
  if (min_re > tol) return {GapKind::LineGapRe, min_re};
  if (min_im > tol) return {GapKind::LineGapIm, min_im};
  if (min_abs > tol) return {GapKind::PointGap, min_abs};
  return {GapKind::Gapless, min_abs};
}

}  // namespace nhssh
