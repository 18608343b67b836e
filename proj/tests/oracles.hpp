#pragma once

// Brute-force oracles for the test suites. Everything here enumerates or
// hand-counts; none of it shares code with the library paths it checks.

#include <cstdint>
#include <vector>

namespace oracles {

// Sum over all p-subsets of the product of their weights, by enumeration.
inline double sigma_enumerated(const std::vector<double>& weights, int p) {
  const int n = static_cast<int>(weights.size());
  if (p == 0) return 1.0;
  if (p > n) return 0.0;
  double total = 0.0;
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  for (;;) {
    double prod = 1.0;
    for (int i : idx) prod *= weights[i];
    total += prod;
    int pos = p - 1;
    while (pos >= 0 && idx[pos] == n - p + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < p; ++i) idx[i] = idx[i - 1] + 1;
  }
  return total;
}

inline std::vector<double> without_index(const std::vector<double>& weights,
                                         int k /*1-based*/) {
  std::vector<double> rest;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (i != k - 1) rest.push_back(weights[i]);
  }
  return rest;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace oracles
