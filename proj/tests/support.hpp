#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "nhssh/model.hpp"

namespace nhssh::test {

inline constexpr double kPi = 3.14159265358979323846;

// Greedy unordered match; returns the largest pairing distance.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

inline std::vector<cplx> negated(std::vector<cplx> v) {
  for (auto& x : v) x = -x;
  return v;
}

inline std::vector<cplx> conjugated(std::vector<cplx> v) {
  for (auto& x : v) x = std::conj(x);
  return v;
}

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  ModelParams any_params() {
    if (uniform(0, 1) < 0.5) {
      return non_reciprocal(uniform(0.1, 3), uniform(0.1, 3), uniform(-2, 2), uniform(-2, 2));
    }
    return imaginary_potential(uniform(0.1, 3), uniform(0.1, 3), uniform(0, 4));
  }
};

}  // namespace nhssh::test
