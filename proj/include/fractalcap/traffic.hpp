#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fractalcap/deployment.hpp"
#include "fractalcap/rng.hpp"
#include "fractalcap/social_graph.hpp"

namespace fractalcap {

struct DestinationRule {
  enum class Kind { uniform, powerlaw, level };
  Kind kind = Kind::uniform;
  double beta = 0.0;  // powerlaw only
  int level = 1;      // level only

  static DestinationRule uniform() { return {}; }
  static DestinationRule powerlaw(double beta) {
    return {Kind::powerlaw, beta, 1};
  }
  static DestinationRule at_level(int l) { return {Kind::level, 0.0, l}; }

  std::string describe() const;
};

// Picks a destination for src:
//   uniform  — equiprobable over the level-1 contacts;
//   powerlaw — over the level-1 contacts with weight d^-beta, d the
//              source-contact Euclidean distance clamped below at one
//              cell side (the grid cannot resolve finer);
//   level    — equiprobable over nodes at social distance exactly `level`.
// Empty when src has no eligible contact; callers resample and log.
std::optional<NodeId> select_destination(const SocialGraph& graph,
                                         const Deployment& dep, NodeId src,
                                         const DestinationRule& rule, Rng& rng);

struct HopEstimate {
  std::string rule;
  long trials = 0;
  double mean_hops = 0.0;
  double stderr_hops = 0.0;
  double empty_cell_fraction = 0.0;
  long resamples = 0;

  struct LevelStat {
    int level = 0;
    double mean_hops = 0.0;
    long long pairs = 0;
  };
  std::vector<LevelStat> per_level;  // hierarchical estimates only
};

// Mean grid hops per transmission under a destination rule.
//
// uniform: per trial the source is uniform over nodes with at least one
// contact and the destination comes from select_destination. Per-trial rng
// streams are derived from (seed, trial), so the estimate is independent of
// execution order.
//
// powerlaw(beta): transmissions are sampled over contact *pairs*, one social
// edge per trial with probability proportional to d^-beta (d clamped at one
// cell side). Weighting the pair ensemble is what makes the distance
// preference bite for every transmission; conditioning per source would pin
// the majority of trials on single-contact users, whose choice cannot depend
// on beta at all, and the distance preference would never reach them.
HopEstimate estimate_mean_hops(const SocialGraph& graph, const Deployment& dep,
                               const DestinationRule& rule, long trials,
                               std::uint64_t seed);

// Mean grid hops over connected pairs of every social level. Per trial a
// source is drawn with probability proportional to its component size minus
// one and hop sums to all its targets are aggregated, which realizes the
// uniform-pair weighting m^(L)/C(n,2) exactly while still visiting every
// level often enough to condition on it. Routes follow one shortest social
// path (lexicographically smallest parent), summing grid hops per edge.
// max_level_stat caps the per-level breakdown, not the estimate.
HopEstimate estimate_hierarchical_hops(const SocialGraph& graph,
                                       const Deployment& dep, long trials,
                                       std::uint64_t seed,
                                       int max_level_stat = 8);

struct CapacityEstimate {
  double lambda = 0.0;
  bool degenerate = false;  // mean_hops was 0; single-cell bound reported
};

// Sustainable per-user rate with unit bandwidth: each of the T^2 phases
// serves one hop per active cell, so lambda = (cells / T^2) / (n * E[X]).
CapacityEstimate capacity_estimate(double mean_hops, const Deployment& dep);

}  // namespace fractalcap
