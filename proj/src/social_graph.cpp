#include "fractalcap/social_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fractalcap/powerlaw.hpp"

namespace fractalcap {

long long SocialGraph::edge_count() const {
  long long total = 0;
  for (const auto& nb : adj) total += static_cast<long long>(nb.size());
  return total / 2;
}

bool SocialGraph::has_edge(NodeId u, NodeId v) const {
  const auto& nb = adj[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool rank_less(const std::vector<int>& degrees, NodeId a, NodeId b) {
  if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
  return a < b;
}

WeightedSampler::WeightedSampler(const std::vector<double>& weights)
    : size_(weights.size()),
      total_(0.0),
      tree_(weights.size() + 1, 0.0),
      weight_(weights),
      present_(weights.size(), true) {
  for (std::size_t i = 0; i < size_; ++i) {
    if (!(weights[i] > 0.0)) {
      throw std::domain_error("WeightedSampler: weights must be positive");
    }
    total_ += weights[i];
  }
  // Build the Fenwick tree in O(n).
  for (std::size_t i = 1; i <= size_; ++i) {
    tree_[i] += weight_[i - 1];
    const std::size_t parent = i + (i & (~i + 1));
    if (parent <= size_) tree_[parent] += tree_[i];
  }
}

void WeightedSampler::remove(std::size_t i) {
  if (!present_[i]) return;
  present_[i] = false;
  total_ -= weight_[i];
  for (std::size_t j = i + 1; j <= size_; j += j & (~j + 1)) {
    tree_[j] -= weight_[i];
  }
}

void WeightedSampler::restore(std::size_t i) {
  if (present_[i]) return;
  present_[i] = true;
  total_ += weight_[i];
  for (std::size_t j = i + 1; j <= size_; j += j & (~j + 1)) {
    tree_[j] += weight_[i];
  }
}

std::size_t WeightedSampler::draw(Rng& rng) {
  if (!(total_ > 0.0)) throw std::runtime_error("WeightedSampler: empty support");
  double u = rng.uniform01() * total_;
  // Prefix descent; accumulated rounding can leave u past the last present
  // weight, so the walk falls back to the highest present index.
  std::size_t idx = 0;
  std::size_t mask = std::size_t{1} << (63 - __builtin_clzll(size_ | 1));
  while (mask != 0) {
    const std::size_t next = idx + mask;
    if (next <= size_ && tree_[next] < u) {
      u -= tree_[next];
      idx = next;
    }
    mask >>= 1;
  }
  // idx is now the count of leading weights with cumulative sum < u.
  while (idx < size_ && !present_[idx]) ++idx;
  if (idx >= size_) {
    idx = size_;
    while (idx > 0 && !present_[idx - 1]) --idx;
    if (idx == 0) throw std::runtime_error("WeightedSampler: empty support");
    --idx;
  }
  remove(idx);
  return idx;
}

SocialGraph build_graph(const std::vector<int>& degrees, double epsilon,
                        std::uint64_t seed) {
  if (!(epsilon > 2.0)) throw std::domain_error("build_graph: epsilon must be > 2");
  const int n = static_cast<int>(degrees.size());

  SocialGraph g;
  g.n = n;
  g.epsilon = epsilon;
  g.seed = seed;
  g.intended_degree = degrees;
  g.adj.assign(n, {});

  // Rank positions: order[0] is the highest-ranked node.
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return rank_less(degrees, b, a);
  });

  std::vector<double> weights(n);
  for (int pos = 0; pos < n; ++pos) {
    weights[pos] = std::pow(static_cast<double>(degrees[order[pos]]), -epsilon);
  }

  WeightedSampler sampler(weights);
  Rng rng(derive_seed(seed, 0x67726170ULL));
  std::vector<int> received(n, 0);
  std::vector<std::size_t> picked;

  for (int pos = 0; pos < n; ++pos) {
    const NodeId v = order[pos];
    sampler.remove(static_cast<std::size_t>(pos));

    const int candidates = n - 1 - pos;
    const int quota = std::max(0, degrees[v] - received[v]);
    const int take = std::min(quota, candidates);
    g.shortfall += quota - take;

    picked.clear();
    for (int s = 0; s < take; ++s) {
      const std::size_t tpos = sampler.draw(rng);
      picked.push_back(tpos);
      const NodeId t = order[tpos];
      g.creation_log.push_back(EdgeRecord{v, t});
      g.adj[v].push_back(t);
      g.adj[t].push_back(v);
      received[t] += 1;
    }
    // Picked targets stay available to later (lower-ranked) selectors.
    for (std::size_t tpos : picked) sampler.restore(tpos);
  }

  for (auto& nb : g.adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return g;
}

int kmax_for(KmaxRule rule, int n) {
  if (rule == KmaxRule::full) return n - 1;
  return std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));
}

SocialGraph generate_social_graph(int n, double gamma, double epsilon,
                                  KmaxRule kmax_rule, std::uint64_t seed) {
  const int kmax = kmax_for(kmax_rule, n);
  const std::vector<int> degrees =
      sample_degrees(n, gamma, kmax, derive_seed(seed, 0x64656773ULL));
  SocialGraph g = build_graph(degrees, epsilon, seed);
  g.gamma = gamma;
  g.kmax = kmax;
  return g;
}

DegreeFit realized_degree_fit(const SocialGraph& graph) {
  int max_deg = 0;
  for (int v = 0; v < graph.n; ++v) {
    max_deg = std::max(max_deg, graph.degree(static_cast<NodeId>(v)));
  }
  if (max_deg < 1) throw std::domain_error("realized_degree_fit: graph has no edges");
  std::vector<long long> counts(max_deg, 0);
  for (int v = 0; v < graph.n; ++v) {
    const int d = graph.degree(static_cast<NodeId>(v));
    if (d >= 1) counts[d - 1] += 1;
  }
  const PowerFit fit = fit_powerlaw_histogram(counts);
  return DegreeFit{fit.exponent, fit.r2};
}

EdgeDegreeStats edge_degree_stats(const SocialGraph& graph) {
  EdgeDegreeStats stats;
  std::vector<double> xs, ys;
  bool any_edge = false;
  for (int u = 0; u < graph.n; ++u) {
    for (NodeId v : graph.adj[u]) {
      if (v <= static_cast<NodeId>(u)) continue;
      any_edge = true;
      const int du = graph.degree(static_cast<NodeId>(u));
      const int dv = graph.degree(v);
      stats.joint_histogram[{std::max(du, dv), std::min(du, dv)}] += 1;
      // both orientations
      xs.push_back(du);
      ys.push_back(dv);
      xs.push_back(dv);
      ys.push_back(du);
    }
  }
  if (!any_edge) throw std::domain_error("edge_degree_stats: graph has no edges");
  stats.assortativity = pearson(xs, ys);
  return stats;
}

void validate_graph(const SocialGraph& graph) {
  for (int u = 0; u < graph.n; ++u) {
    const auto& nb = graph.adj[u];
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == static_cast<NodeId>(u)) {
        throw std::runtime_error("validate_graph: self loop");
      }
      if (i > 0 && nb[i] <= nb[i - 1]) {
        throw std::runtime_error("validate_graph: unsorted or duplicate neighbor");
      }
      if (nb[i] >= static_cast<NodeId>(graph.n)) {
        throw std::runtime_error("validate_graph: neighbor out of range");
      }
      if (!graph.has_edge(nb[i], static_cast<NodeId>(u))) {
        throw std::runtime_error("validate_graph: asymmetric adjacency");
      }
    }
  }
  if (!graph.intended_degree.empty()) {
    std::vector<int> selected(graph.n, 0);
    for (const EdgeRecord& rec : graph.creation_log) {
      if (!rank_less(graph.intended_degree, rec.target, rec.selector)) {
        throw std::runtime_error("validate_graph: creation record violates rank order");
      }
      selected[rec.selector] += 1;
    }
    for (int v = 0; v < graph.n; ++v) {
      if (graph.degree(static_cast<NodeId>(v)) < selected[v]) {
        throw std::runtime_error("validate_graph: realized degree below selected count");
      }
    }
  }
}

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_edge_list(const SocialGraph& graph, std::ostream& out) {
  out << "# fractalcap-graph v1 n=" << graph.n
      << " gamma=" << format_double(graph.gamma)
      << " epsilon=" << format_double(graph.epsilon) << " seed=" << graph.seed
      << "\n";
  for (int u = 0; u < graph.n; ++u) {
    for (NodeId v : graph.adj[u]) {
      if (v > static_cast<NodeId>(u)) {
        out << u << " " << v << "\n";
      }
    }
  }
}

void write_edge_list(const SocialGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_edge_list: cannot open " + path);
  write_edge_list(graph, out);
}

SocialGraph read_edge_list(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("read_edge_list: empty input");
  }
  SocialGraph g;
  {
    std::istringstream hs(header);
    std::string hash, tag, ver;
    hs >> hash >> tag >> ver;
    if (hash != "#" || tag != "fractalcap-graph" || ver != "v1") {
      throw std::runtime_error("read_edge_list: bad header: " + header);
    }
    std::string kv;
    while (hs >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw std::runtime_error("read_edge_list: bad header field: " + kv);
      }
      const std::string key = kv.substr(0, eq);
      const std::string val = kv.substr(eq + 1);
      if (key == "n") g.n = std::stoi(val);
      else if (key == "gamma") g.gamma = std::stod(val);
      else if (key == "epsilon") g.epsilon = std::stod(val);
      else if (key == "seed") g.seed = std::stoull(val);
      else throw std::runtime_error("read_edge_list: unknown header field: " + key);
    }
  }
  if (g.n <= 0) throw std::runtime_error("read_edge_list: missing n");
  g.adj.assign(g.n, {});
  long long u, v;
  while (in >> u >> v) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) {
      throw std::runtime_error("read_edge_list: node id out of range");
    }
    g.adj[static_cast<std::size_t>(u)].push_back(static_cast<NodeId>(v));
    g.adj[static_cast<std::size_t>(v)].push_back(static_cast<NodeId>(u));
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  // Imported graphs carry no creation log; realized degrees stand in for
  // intended ones so downstream statistics remain usable.
  g.intended_degree.clear();
  return g;
}

SocialGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_edge_list: cannot open " + path);
  return read_edge_list(in);
}

}  // namespace fractalcap
