#include "fractalcap/graph.hpp"

#include <algorithm>
#include <queue>

#include "fractalcap/rng.hpp"

namespace fractalcap {

AdjList make_path(int n) {
  AdjList adj(n);
  for (int i = 0; i + 1 < n; ++i) {
    adj[i].push_back(i + 1);
    adj[i + 1].push_back(i);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

AdjList make_cycle(int n) {
  AdjList adj = make_path(n);
  if (n >= 3) {
    adj[0].push_back(n - 1);
    adj[n - 1].push_back(0);
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  }
  return adj;
}

AdjList make_star(int n) {
  AdjList adj(n);
  for (int i = 1; i < n; ++i) {
    adj[0].push_back(i);
    adj[i].push_back(0);
  }
  std::sort(adj[0].begin(), adj[0].end());
  return adj;
}

AdjList make_complete(int n) {
  AdjList adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i) adj[i].push_back(j);
    }
  }
  return adj;
}

AdjList make_spider(int legs, int leg_len) {
  AdjList adj(1 + legs * leg_len);
  int next = 1;
  for (int l = 0; l < legs; ++l) {
    int prev = 0;
    for (int i = 0; i < leg_len; ++i) {
      adj[prev].push_back(next);
      adj[next].push_back(prev);
      prev = next++;
    }
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

AdjList make_double_star(int a, int b) {
  AdjList adj(2 + a + b);
  adj[0].push_back(1);
  adj[1].push_back(0);
  int next = 2;
  for (int i = 0; i < a; ++i, ++next) {
    adj[0].push_back(next);
    adj[next].push_back(0);
  }
  for (int i = 0; i < b; ++i, ++next) {
    adj[1].push_back(next);
    adj[next].push_back(1);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

AdjList make_random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  AdjList adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  return adj;
}

std::vector<int> bfs_distances(const AdjList& adj, NodeId src, int max_depth) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<NodeId> queue;
  dist[src] = 0;
  queue.push(src);
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop();
    if (max_depth >= 0 && dist[v] >= max_depth) continue;
    for (NodeId u : adj[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push(u);
      }
    }
  }
  return dist;
}

SocialGraph graph_from_adjacency(AdjList adj) {
  SocialGraph g;
  g.n = static_cast<int>(adj.size());
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  g.adj = std::move(adj);
  g.intended_degree.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    g.intended_degree[v] = g.degree(static_cast<NodeId>(v));
  }
  return g;
}

Components connected_components(const AdjList& adj) {
  const int n = static_cast<int>(adj.size());
  Components c;
  c.comp.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (c.comp[v] >= 0) continue;
    const int id = static_cast<int>(c.size.size());
    int count = 0;
    std::queue<NodeId> queue;
    c.comp[v] = id;
    queue.push(static_cast<NodeId>(v));
    while (!queue.empty()) {
      const NodeId x = queue.front();
      queue.pop();
      ++count;
      for (NodeId u : adj[x]) {
        if (c.comp[u] < 0) {
          c.comp[u] = id;
          queue.push(u);
        }
      }
    }
    c.size.push_back(count);
  }
  return c;
}

}  // namespace fractalcap
