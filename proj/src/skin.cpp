#include "nhssh/skin.hpp"

#include <cmath>
#include <string>

#include "nhssh/error.hpp"
#include "nhssh/kernels.hpp"

namespace nhssh {

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Left:
      return "left";
    case Side::Right:
      return "right";
    case Side::None:
      break;
  }
  return "none";
}

LocalizationProfile localization_profile(const Spectrum& spectrum,
                                         std::size_t n_sites,
                                         double edge_fraction) {
  if (!spectrum.has_vectors()) {
    throw InvalidArgument("localization profile needs eigenvectors");
  }
  if (static_cast<std::size_t>(spectrum.right_vectors.rows()) != n_sites) {
    throw InvalidArgument("eigenvectors have " +
                          std::to_string(spectrum.right_vectors.rows()) +
                          " components, expected " + std::to_string(n_sites));
  }
  if (!(edge_fraction > 0.0 && edge_fraction <= 0.5)) {
    throw InvalidArgument("edge fraction must lie in (0, 0.5]");
  }

  LocalizationProfile out;
  out.edge_sites = static_cast<std::size_t>(
      std::ceil(edge_fraction * static_cast<double>(n_sites)));
  out.site_density.assign(n_sites, 0.0);

  const auto& kernel = kernels::active();
  std::vector<double> state(n_sites);
  for (Eigen::Index n = 0; n < spectrum.right_vectors.cols(); ++n) {
    const Eigen::VectorXcd psi = spectrum.right_vectors.col(n).normalized();
    std::fill(state.begin(), state.end(), 0.0);
    kernel.accumulate_abs2(reinterpret_cast<const double*>(psi.data()),
                           n_sites, state.data());
    EdgeWeight w;
    for (std::size_t i = 0; i < out.edge_sites; ++i) {
      w.left += state[i];
      w.right += state[n_sites - 1 - i];
    }
    out.per_state_edge_weight.push_back(w);
    for (std::size_t i = 0; i < n_sites; ++i) out.site_density[i] += state[i];
  }
  return out;
}

NhseVerdict nhse_verdict(const LocalizationProfile& profile,
                         const SkinThresholds& thresholds) {
  NhseVerdict v;
  const auto& weights = profile.per_state_edge_weight;
  if (weights.empty()) return v;
  for (const auto& w : weights) {
    if (w.total() <= thresholds.state_weight) continue;
    if (w.left > w.right) {
      ++v.n_left;
    } else {
      ++v.n_right;
    }
  }
  v.localized_fraction = static_cast<double>(v.n_left + v.n_right) /
                         static_cast<double>(weights.size());
  v.present = v.localized_fraction >= thresholds.population;
  if (v.present) {
    v.side = v.n_right > v.n_left   ? Side::Right
             : v.n_left > v.n_right ? Side::Left
                                    : Side::None;
  }
  return v;
}

NhseVerdict nhse_verdict(const ModelParams& p, int n_cells,
                         const SkinThresholds& thresholds) {
  const Spectrum s = obc_spectrum(p, n_cells);
  const auto profile = localization_profile(
      s, static_cast<std::size_t>(2 * n_cells), thresholds.edge_fraction);
  return nhse_verdict(profile, thresholds);
}

}  // namespace nhssh
