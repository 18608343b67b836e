#pragma once

#include <cstdint>
#include <vector>

#include "fractalcap/rng.hpp"

namespace fractalcap {

// Truncated discrete power law P(k) = k^-exponent / M over k = 1..kmax.
struct PowerLawDist {
  double exponent = 0.0;
  int kmax = 0;
  double norm = 0.0;            // M = sum k^-exponent
  std::vector<double> cdf;      // cdf[k-1] = P(K <= k)

  static PowerLawDist make(double exponent, int kmax);

  double pmf(int k) const;

  // Inverse-CDF draw.
  int sample(Rng& rng) const;
};

// M = sum_{k=1..kmax} k^-exponent, summed in ascending k with compensation.
double powerlaw_normalization(double exponent, int kmax);

// n independent inverse-CDF draws from PowerLawDist(gamma, kmax).
// Requires gamma > 2 and kmax <= n-1; warns on stderr when gamma is outside
// (2, 3), the usual range for real networks.
std::vector<int> sample_degrees(int n, double gamma, int kmax,
                                std::uint64_t seed);

}  // namespace fractalcap
