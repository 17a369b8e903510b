#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "nhssh/model.hpp"
#include "nhssh/spectral.hpp"

namespace nhssh {

struct EdgeWeight {
  double left = 0.0;   // weight on the first edge_sites sites
  double right = 0.0;  // weight on the last edge_sites sites
  double total() const { return left + right; }
};

struct LocalizationProfile {
  std::vector<double> site_density;  // sum over states of |psi_n(site)|^2
  std::vector<EdgeWeight> per_state_edge_weight;
  std::size_t edge_sites = 0;
};

// Edge region = first/last ceil(edge_fraction * n_sites) sites.
inline constexpr double kEdgeFraction = 0.1;

// Uses the right eigenvectors; each is renormalised to unit norm.
LocalizationProfile localization_profile(const Spectrum& spectrum,
                                         std::size_t n_sites,
                                         double edge_fraction = kEdgeFraction);

enum class Side { Left, Right, None };

std::string_view to_string(Side side);

struct SkinThresholds {
  double edge_fraction = kEdgeFraction;
  double state_weight = 0.6;  // a state is edge-localized above this
  double population = 0.8;    // NHSE needs this share of localized states
};

struct NhseVerdict {
  bool present = false;
  Side side = Side::None;
  double localized_fraction = 0.0;
  std::size_t n_left = 0;   // localized states leaning left
  std::size_t n_right = 0;  // localized states leaning right
};

NhseVerdict nhse_verdict(const LocalizationProfile& profile,
                         const SkinThresholds& thresholds = {});

NhseVerdict nhse_verdict(const ModelParams& p, int n_cells,
                         const SkinThresholds& thresholds = {});

}  // namespace nhssh
