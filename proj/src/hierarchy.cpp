#include "fractalcap/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace fractalcap {

namespace {

// BFS level counts for sources in [begin, end), writing disjoint slots.
void profile_range(const SocialGraph& graph, int L_explore, int begin, int end,
                   LevelProfile* out) {
  const int n = graph.n;
  std::vector<int> dist(n, -1);
  std::vector<NodeId> frontier, next;
  for (int s = begin; s < end; ++s) {
    // epoch-free reset: only touched nodes are cleared after each source
    std::vector<NodeId> touched;
    dist[s] = 0;
    touched.push_back(static_cast<NodeId>(s));
    frontier.assign(1, static_cast<NodeId>(s));
    for (int level = 1; level <= L_explore && !frontier.empty(); ++level) {
      next.clear();
      for (NodeId v : frontier) {
        for (NodeId u : graph.adj[v]) {
          if (dist[u] < 0) {
            dist[u] = level;
            next.push_back(u);
            touched.push_back(u);
          }
        }
      }
      out->count[level - 1][s] = static_cast<std::uint32_t>(next.size());
      frontier.swap(next);
    }
    for (NodeId v : touched) dist[v] = -1;
  }
}

double truncated_sum(double exponent, int kmax) {
  double sum = 0.0, comp = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double term = std::pow(static_cast<double>(k), -exponent) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

bool is_boundary(double epsilon) { return std::abs(epsilon - 3.0) < 1e-12; }

}  // namespace

LevelProfile level_degree_profile(const SocialGraph& graph, int L_explore,
                                  int threads) {
  if (L_explore < 1) throw std::domain_error("level_degree_profile: L_explore must be >= 1");
  const int n = graph.n;
  LevelProfile profile;
  profile.n = n;
  profile.levels = L_explore;
  profile.count.assign(L_explore, std::vector<std::uint32_t>(n, 0));

  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    threads = std::min(threads, 8);
  }
  threads = std::min(threads, std::max(1, n / 64));
  if (threads <= 1 || n < 128) {
    profile_range(graph, L_explore, 0, n, &profile);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(profile_range, std::cref(graph), L_explore, begin, end,
                        &profile);
    }
    for (auto& th : pool) th.join();
  }

  profile.mean_level_degree.resize(L_explore);
  profile.pair_count.resize(L_explore);
  profile.ratio.resize(L_explore);
  const double all_pairs = 0.5 * static_cast<double>(n) * (n - 1);
  double covered = 0.0;
  for (int level = 0; level < L_explore; ++level) {
    double total = 0.0;
    for (std::uint32_t c : profile.count[level]) total += c;
    profile.mean_level_degree[level] = n > 0 ? total / n : 0.0;
    profile.pair_count[level] = total / 2.0;
    profile.ratio[level] = all_pairs > 0.0 ? profile.pair_count[level] / all_pairs : 0.0;
    covered += total;
  }
  profile.coverage =
      n > 1 ? covered / (static_cast<double>(n) * (n - 1)) : 0.0;
  return profile;
}

void write_level_profile_csv(const LevelProfile& profile,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_level_profile_csv: cannot open " + path);
  out << "level,mean_level_degree,pair_count,ratio\n";
  char buf[128];
  for (int level = 0; level < profile.levels; ++level) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", level + 1,
                  profile.mean_level_degree[level], profile.pair_count[level],
                  profile.ratio[level]);
    out << buf;
  }
}

Extendibility extendibility_class(double epsilon) {
  if (!(epsilon > 2.0)) {
    throw std::domain_error("extendibility_class: epsilon must be > 2");
  }
  if (is_boundary(epsilon)) return Extendibility::invariant;
  return epsilon < 3.0 ? Extendibility::expanding : Extendibility::contracting;
}

const char* to_string(Extendibility e) {
  switch (e) {
    case Extendibility::expanding: return "expanding";
    case Extendibility::invariant: return "invariant";
    case Extendibility::contracting: return "contracting";
  }
  return "unknown";
}

double analytic_level_degree(double gamma, double epsilon, int L) {
  if (!(gamma > 2.0)) throw std::domain_error("analytic_level_degree: gamma must be > 2");
  if (!(epsilon > 2.0)) throw std::domain_error("analytic_level_degree: epsilon must be > 2");
  if (L < 1) throw std::domain_error("analytic_level_degree: L must be >= 1");
  const double alpha = 1.0 / (epsilon - 2.0);
  return std::pow(alpha, L - 1) * (gamma - 1.0) / (gamma - 2.0);
}

double analytic_level_degree_discrete(double gamma, double epsilon, int L,
                                      int kmax) {
  if (!(gamma > 2.0)) throw std::domain_error("analytic_level_degree_discrete: gamma must be > 2");
  if (!(epsilon > 2.0)) throw std::domain_error("analytic_level_degree_discrete: epsilon must be > 2");
  if (L < 1) throw std::domain_error("analytic_level_degree_discrete: L must be >= 1");
  if (kmax < 1) throw std::domain_error("analytic_level_degree_discrete: kmax must be >= 1");
  const double k1 = truncated_sum(gamma - 1.0, kmax) / truncated_sum(gamma, kmax);
  const double d = truncated_sum(epsilon - 1.0, kmax) / truncated_sum(epsilon, kmax);
  return k1 * std::pow(d - 1.0, L - 1);
}

double max_level(double gamma, double epsilon, long long n) {
  if (!(gamma > 2.0)) throw std::domain_error("max_level: gamma must be > 2");
  if (n < 2) throw std::domain_error("max_level: n must be >= 2");
  if (!(epsilon > 2.0)) throw std::domain_error("max_level: epsilon must be > 2");
  if (epsilon > 3.0 && !is_boundary(epsilon)) {
    throw std::invalid_argument("max_level: unsupported for epsilon > 3");
  }
  const double pairs = static_cast<double>(n - 1);
  if (is_boundary(epsilon)) {
    return (gamma - 2.0) * pairs / (gamma - 1.0);
  }
  const double alpha = 1.0 / (epsilon - 2.0);
  const double arg = (gamma - 2.0) * (alpha - 1.0) * pairs / (gamma - 1.0) + 1.0;
  return std::log(arg) / std::log(alpha);
}

double hierarchical_hop_factor(double gamma, double epsilon, long long n) {
  if (!(gamma > 2.0)) throw std::domain_error("hierarchical_hop_factor: gamma must be > 2");
  if (n < 2) throw std::domain_error("hierarchical_hop_factor: n must be >= 2");
  if (!(epsilon > 2.0)) throw std::domain_error("hierarchical_hop_factor: epsilon must be > 2");
  if (epsilon > 3.0 && !is_boundary(epsilon)) {
    throw std::invalid_argument("hierarchical_hop_factor: unsupported for epsilon > 3");
  }
  if (is_boundary(epsilon)) {
    return ((gamma - 2.0) * static_cast<double>(n) + 1.0) / (2.0 * (gamma - 1.0));
  }
  const double alpha = 1.0 / (epsilon - 2.0);
  const double pairs = static_cast<double>(n - 1);
  const double lmax = max_level(gamma, epsilon, n);
  const double geom = (gamma - 2.0) * (alpha - 1.0) * pairs / (gamma - 1.0) + 1.0;
  const double s = (lmax * geom - (gamma - 2.0) * pairs / (gamma - 1.0)) / (alpha - 1.0);
  return (gamma - 1.0) / ((gamma - 2.0) * pairs) * s;
}

double capacity_reduction(double lambda_direct, double gamma, double epsilon,
                          long long n) {
  if (!(lambda_direct > 0.0)) {
    throw std::domain_error("capacity_reduction: lambda_direct must be > 0");
  }
  return lambda_direct / hierarchical_hop_factor(gamma, epsilon, n);
}

}  // namespace fractalcap
