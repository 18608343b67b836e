#include "fractalcap/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fractalcap {

double powerlaw_normalization(double exponent, int kmax) {
  if (kmax < 1) throw std::domain_error("powerlaw_normalization: kmax must be >= 1");
  if (!(exponent > 1.0)) {
    throw std::domain_error("powerlaw_normalization: exponent must be > 1");
  }
  double sum = 0.0, comp = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double term = std::pow(static_cast<double>(k), -exponent) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

PowerLawDist PowerLawDist::make(double exponent, int kmax) {
  PowerLawDist d;
  d.exponent = exponent;
  d.kmax = kmax;
  d.norm = powerlaw_normalization(exponent, kmax);
  d.cdf.resize(kmax);
  double acc = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    acc += std::pow(static_cast<double>(k), -exponent) / d.norm;
    d.cdf[k - 1] = acc;
  }
  d.cdf[kmax - 1] = 1.0;
  return d;
}

double PowerLawDist::pmf(int k) const {
  if (k < 1 || k > kmax) return 0.0;
  return std::pow(static_cast<double>(k), -exponent) / norm;
}

int PowerLawDist::sample(Rng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(it - cdf.begin()) + 1;
}

std::vector<int> sample_degrees(int n, double gamma, int kmax,
                                std::uint64_t seed) {
  if (n < 1) throw std::domain_error("sample_degrees: n must be >= 1");
  if (kmax >= n) {
    throw std::domain_error(
        "sample_degrees: kmax must be <= n-1 (contacts are distinct users)");
  }
  if (!(gamma > 2.0)) throw std::domain_error("sample_degrees: gamma must be > 2");
  if (gamma >= 3.0) {
    std::fprintf(stderr,
                 "sample_degrees: gamma=%.3f outside the usual (2,3) range\n",
                 gamma);
  }
  const PowerLawDist dist = PowerLawDist::make(gamma, kmax);
  Rng rng(seed);
  std::vector<int> degrees(n);
  for (int i = 0; i < n; ++i) degrees[i] = dist.sample(rng);
  return degrees;
}

}  // namespace fractalcap
