#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fractalcap/fit.hpp"
#include "fractalcap/rng.hpp"

namespace fractalcap {

using NodeId = std::uint32_t;
using AdjList = std::vector<std::vector<NodeId>>;

enum class KmaxRule { sqrt_n, full };

struct EdgeRecord {
  NodeId selector;
  NodeId target;
};

// Undirected social topology. intended_degree is the sampled per-node degree
// target that drives edge selection; realized degrees (adjacency sizes) also
// include passively received edges, and all empirical statistics use them.
struct SocialGraph {
  int n = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  int kmax = 0;
  std::uint64_t seed = 0;
  std::vector<int> intended_degree;
  AdjList adj;                          // sorted neighbor lists
  std::vector<EdgeRecord> creation_log; // one record per selected edge
  long long shortfall = 0;              // total unmet selection quota

  int degree(NodeId v) const { return static_cast<int>(adj[v].size()); }
  long long edge_count() const;
  bool has_edge(NodeId u, NodeId v) const;
};

// Total rank order used for edge orientation: (intended degree, node id),
// larger tuple = higher rank. Selectors always outrank their targets.
bool rank_less(const std::vector<int>& degrees, NodeId a, NodeId b);

// Sequential construction in descending rank order. A node whose intended
// degree is q and that has already received r edges selects
// min(max(0, q - r), #lower-ranked candidates) distinct targets without
// replacement, with weight proportional to (target intended degree)^-epsilon.
SocialGraph build_graph(const std::vector<int>& degrees, double epsilon,
                        std::uint64_t seed);

// sample_degrees + build_graph, with kmax from the rule and params recorded.
SocialGraph generate_social_graph(int n, double gamma, double epsilon,
                                  KmaxRule kmax_rule, std::uint64_t seed);

int kmax_for(KmaxRule rule, int n);

struct DegreeFit {
  double gamma_hat = 0.0;
  double r2 = 0.0;
};

// Log-binned log-log fit of the realized degree histogram.
// Throws when all realized degrees are equal.
DegreeFit realized_degree_fit(const SocialGraph& graph);

struct EdgeDegreeStats {
  // Pearson correlation of endpoint degrees over both edge orientations;
  // empty when endpoint degrees have zero variance.
  std::optional<double> assortativity;
  // (max degree, min degree) -> edge count
  std::map<std::pair<int, int>, long long> joint_histogram;
};

EdgeDegreeStats edge_degree_stats(const SocialGraph& graph);

// Checks symmetry, loop-freedom, duplicate-freedom, sortedness and the
// creation-rank invariant; throws on violation.
void validate_graph(const SocialGraph& graph);

// Plain-text edge list with a header line
//   # fractalcap-graph v1 n=<n> gamma=<g> epsilon=<e> seed=<s>
// followed by one "u v" pair per line, 0-based, ascending. Round-trips
// bit-exactly.
void write_edge_list(const SocialGraph& graph, std::ostream& out);
void write_edge_list(const SocialGraph& graph, const std::string& path);
SocialGraph read_edge_list(std::istream& in);
SocialGraph read_edge_list_file(const std::string& path);

// Fenwick-backed weighted sampling without replacement; selection order is
// the reference successive-draw order that defines build determinism.
class WeightedSampler {
 public:
  explicit WeightedSampler(const std::vector<double>& weights);

  double total() const { return total_; }
  void remove(std::size_t i);
  void restore(std::size_t i);
  bool present(std::size_t i) const { return present_[i]; }

  // Draws one present index with probability proportional to its weight and
  // removes it. Requires a nonempty support.
  std::size_t draw(Rng& rng);

 private:
  double prefix(std::size_t i) const;
  std::size_t size_;
  double total_;
  std::vector<double> tree_;
  std::vector<double> weight_;
  std::vector<bool> present_;
};

}  // namespace fractalcap
