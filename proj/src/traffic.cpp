#include "fractalcap/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "fractalcap/graph.hpp"

namespace fractalcap {

std::string DestinationRule::describe() const {
  switch (kind) {
    case Kind::uniform: return "uniform";
    case Kind::powerlaw: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "powerlaw(beta=%g)", beta);
      return buf;
    }
    case Kind::level: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "level(%d)", level);
      return buf;
    }
  }
  return "unknown";
}

std::optional<NodeId> select_destination(const SocialGraph& graph,
                                         const Deployment& dep, NodeId src,
                                         const DestinationRule& rule,
                                         Rng& rng) {
  switch (rule.kind) {
    case DestinationRule::Kind::uniform: {
      const auto& nb = graph.adj[src];
      if (nb.empty()) return std::nullopt;
      return nb[rng.below(nb.size())];
    }
    case DestinationRule::Kind::powerlaw: {
      if (rule.beta < 0.0) {
        throw std::domain_error("select_destination: beta must be >= 0");
      }
      const auto& nb = graph.adj[src];
      if (nb.empty()) return std::nullopt;
      double total = 0.0;
      std::vector<double> w(nb.size());
      for (std::size_t i = 0; i < nb.size(); ++i) {
        const double d = std::max(
            dep.cell_side, std::hypot(dep.x[src] - dep.x[nb[i]],
                                      dep.y[src] - dep.y[nb[i]]));
        w[i] = std::pow(d, -rule.beta);
        total += w[i];
      }
      double u = rng.uniform01() * total;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        u -= w[i];
        if (u <= 0.0) return nb[i];
      }
      return nb.back();
    }
    case DestinationRule::Kind::level: {
      if (rule.level < 1) {
        throw std::domain_error("select_destination: level must be >= 1");
      }
      const std::vector<int> dist = bfs_distances(graph.adj, src, rule.level);
      std::vector<NodeId> ring;
      for (std::size_t v = 0; v < dist.size(); ++v) {
        if (dist[v] == rule.level) ring.push_back(static_cast<NodeId>(v));
      }
      if (ring.empty()) return std::nullopt;
      return ring[rng.below(ring.size())];
    }
  }
  return std::nullopt;
}

namespace {

HopEstimate finish_estimate(const std::string& rule, long trials,
                            long long sum, long long sum_sq,
                            const Deployment& dep, long resamples) {
  HopEstimate est;
  est.rule = rule;
  est.trials = trials;
  est.resamples = resamples;
  est.empty_cell_fraction = occupancy_report(dep);
  est.mean_hops = static_cast<double>(sum) / trials;
  if (trials > 1) {
    const double var = (static_cast<double>(sum_sq) -
                        static_cast<double>(sum) * sum / trials) /
                       (trials - 1);
    est.stderr_hops = std::sqrt(std::max(0.0, var) / trials);
  }
  return est;
}

}  // namespace

HopEstimate estimate_mean_hops(const SocialGraph& graph, const Deployment& dep,
                               const DestinationRule& rule, long trials,
                               std::uint64_t seed) {
  if (trials < 1) throw std::domain_error("estimate_mean_hops: trials must be >= 1");
  if (rule.kind == DestinationRule::Kind::level) {
    throw std::invalid_argument(
        "estimate_mean_hops: use estimate_hierarchical_hops for level traffic");
  }

  if (rule.kind == DestinationRule::Kind::powerlaw) {
    // Pair-ensemble sampling over social edges, weight d^-beta.
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<double> cumulative;
    double total = 0.0;
    for (int u = 0; u < graph.n; ++u) {
      for (NodeId v : graph.adj[u]) {
        if (v <= static_cast<NodeId>(u)) continue;
        const double d =
            std::max(dep.cell_side,
                     std::hypot(dep.x[u] - dep.x[v], dep.y[u] - dep.y[v]));
        total += std::pow(d, -rule.beta);
        edges.emplace_back(static_cast<NodeId>(u), v);
        cumulative.push_back(total);
      }
    }
    if (edges.empty()) {
      throw std::runtime_error("estimate_mean_hops: graph has no edges");
    }
    long long sum = 0, sum_sq = 0;
    for (long t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
      const double u = rng.uniform01() * total;
      const auto it =
          std::lower_bound(cumulative.begin(), cumulative.end(), u);
      const std::size_t idx =
          std::min(edges.size() - 1,
                   static_cast<std::size_t>(it - cumulative.begin()));
      const long long h = grid_hops(dep, edges[idx].first, edges[idx].second);
      sum += h;
      sum_sq += h * h;
    }
    return finish_estimate(rule.describe(), trials, sum, sum_sq, dep, 0);
  }

  std::vector<NodeId> eligible;
  for (int v = 0; v < graph.n; ++v) {
    if (!graph.adj[v].empty()) eligible.push_back(static_cast<NodeId>(v));
  }
  if (eligible.empty()) {
    throw std::runtime_error("estimate_mean_hops: no node has a contact");
  }
  long long sum = 0, sum_sq = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const NodeId src = eligible[rng.below(eligible.size())];
    const auto dst = select_destination(graph, dep, src, rule, rng);
    const long long h = grid_hops(dep, src, *dst);
    sum += h;
    sum_sq += h * h;
  }
  return finish_estimate(rule.describe(), trials, sum, sum_sq, dep, 0);
}

HopEstimate estimate_hierarchical_hops(const SocialGraph& graph,
                                       const Deployment& dep, long trials,
                                       std::uint64_t seed,
                                       int max_level_stat) {
  if (trials < 1) {
    throw std::domain_error("estimate_hierarchical_hops: trials must be >= 1");
  }
  const Components comps = connected_components(graph.adj);
  // Source weight = number of ordered pairs it heads.
  std::vector<double> cumulative(graph.n);
  double total = 0.0;
  for (int v = 0; v < graph.n; ++v) {
    total += static_cast<double>(comps.size[comps.comp[v]] - 1);
    cumulative[v] = total;
  }
  if (!(total > 0.0)) {
    throw std::runtime_error(
        "estimate_hierarchical_hops: no connected pair exists");
  }

  std::vector<long long> level_hops(max_level_stat, 0);
  std::vector<long long> level_pairs(max_level_stat, 0);

  double mean_sum = 0.0, mean_sq_sum = 0.0;
  long resamples = 0;

  std::vector<int> dist(graph.n);
  std::vector<long long> hops_to(graph.n);
  std::vector<NodeId> frontier, next;

  for (long t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const double u = rng.uniform01() * total;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    const NodeId src = static_cast<NodeId>(
        std::min<std::size_t>(graph.n - 1, it - cumulative.begin()));

    // BFS with lexicographically smallest parent: scanning nodes in id order
    // per level assigns each newly discovered node its smallest predecessor.
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    hops_to[src] = 0;
    frontier.assign(1, src);
    long long trial_sum = 0;
    long long trial_pairs = 0;
    int level = 0;
    while (!frontier.empty()) {
      ++level;
      next.clear();
      std::sort(frontier.begin(), frontier.end());
      for (NodeId v : frontier) {
        for (NodeId w : graph.adj[v]) {
          if (dist[w] < 0) {
            dist[w] = level;
            hops_to[w] = hops_to[v] + grid_hops(dep, v, w);
            next.push_back(w);
          }
        }
      }
      for (NodeId w : next) {
        trial_sum += hops_to[w];
        ++trial_pairs;
        if (level <= max_level_stat) {
          level_hops[level - 1] += hops_to[w];
          level_pairs[level - 1] += 1;
        }
      }
      frontier.swap(next);
    }
    if (trial_pairs == 0) {
      ++resamples;  // isolated source; contributes nothing
      continue;
    }
    const double m = static_cast<double>(trial_sum) / trial_pairs;
    mean_sum += m;
    mean_sq_sum += m * m;
  }

  const long effective = trials - resamples;
  if (effective == 0) {
    throw std::runtime_error("estimate_hierarchical_hops: all draws isolated");
  }

  HopEstimate est;
  est.rule = "hierarchical";
  est.trials = trials;
  est.resamples = resamples;
  est.empty_cell_fraction = occupancy_report(dep);
  est.mean_hops = mean_sum / effective;
  if (effective > 1) {
    const double var =
        (mean_sq_sum - mean_sum * mean_sum / effective) / (effective - 1);
    est.stderr_hops = std::sqrt(std::max(0.0, var) / effective);
  }
  for (int l = 1; l <= max_level_stat; ++l) {
    if (level_pairs[l - 1] > 0) {
      est.per_level.push_back(HopEstimate::LevelStat{
          l, static_cast<double>(level_hops[l - 1]) / level_pairs[l - 1],
          level_pairs[l - 1]});
    }
  }
  return est;
}

CapacityEstimate capacity_estimate(double mean_hops, const Deployment& dep) {
  if (mean_hops < 0.0) {
    throw std::domain_error("capacity_estimate: mean_hops must be >= 0");
  }
  const double active_cells =
      static_cast<double>(dep.cells()) /
      (static_cast<double>(dep.tdma) * dep.tdma);
  CapacityEstimate est;
  if (mean_hops == 0.0) {
    est.degenerate = true;
    est.lambda = active_cells / dep.n;  // single-cell service bound
    return est;
  }
  est.lambda = active_cells / (static_cast<double>(dep.n) * mean_hops);
  return est;
}

}  // namespace fractalcap
