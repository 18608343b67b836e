#pragma once

#include <string>
#include <vector>

#include "fractalcap/social_graph.hpp"

namespace fractalcap {

// Per-level contact statistics. Level membership is exact shortest-path
// distance, so every connected pair lands at exactly one level and the
// level ratios over C(n,2) sum to 1 on connected graphs.
struct LevelProfile {
  int n = 0;
  int levels = 0;
  // count[L-1][v] = number of nodes at distance exactly L from v
  std::vector<std::vector<std::uint32_t>> count;
  std::vector<double> mean_level_degree;  // per level
  std::vector<double> pair_count;         // m^(L) = sum_v count / 2
  std::vector<double> ratio;              // m^(L) / C(n,2)
  double coverage = 0.0;  // fraction of ordered pairs within explored levels
};

// Breadth-first level sets from every node up to L_explore.
// threads = 0 picks a hardware-based default; output is identical at any
// thread count.
LevelProfile level_degree_profile(const SocialGraph& graph, int L_explore,
                                  int threads = 0);

void write_level_profile_csv(const LevelProfile& profile,
                             const std::string& path);

enum class Extendibility { expanding, invariant, contracting };

// Classification by the correlation exponent: expanding on (2,3),
// invariant at 3, contracting above 3. epsilon <= 2 is rejected.
Extendibility extendibility_class(double epsilon);
const char* to_string(Extendibility e);

// Closed-form mean level-L contact count, continuous limit:
//   (1/(epsilon-2))^(L-1) * (gamma-1)/(gamma-2).
double analytic_level_degree(double gamma, double epsilon, int L);

// Discrete counterpart over truncated sums k = 1..kmax:
//   K1 = sum k^(1-gamma)/sum k^-gamma,  D = sum k^(1-epsilon)/sum k^-epsilon,
//   level L value K1 * (D-1)^(L-1).
double analytic_level_degree_discrete(double gamma, double epsilon, int L,
                                      int kmax);

// Level count at which the geometric level ratios exhaust all pairs.
// Real-valued; callers ceil for discrete use. Supported for 2 < epsilon <= 3.
double max_level(double gamma, double epsilon, long long n);

// Ratio of the all-levels mean hop count to the level-1 mean hop count.
// Supported for 2 < epsilon <= 3.
double hierarchical_hop_factor(double gamma, double epsilon, long long n);

// Capacity after spreading traffic across all contact levels.
double capacity_reduction(double lambda_direct, double gamma, double epsilon,
                          long long n);

}  // namespace fractalcap
