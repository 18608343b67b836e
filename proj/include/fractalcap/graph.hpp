#pragma once

#include <cstdint>
#include <vector>

#include "fractalcap/social_graph.hpp"

namespace fractalcap {

// Small topology builders shared by tests and the verification corpus.
AdjList make_path(int n);
AdjList make_cycle(int n);
AdjList make_star(int n);      // node 0 is the center
AdjList make_complete(int n);
AdjList make_spider(int legs, int leg_len);      // node 0 is the center
AdjList make_double_star(int a, int b);          // centers 0 and 1

// Seeded G(n, p) conditioned on nothing; may be disconnected.
AdjList make_random_graph(int n, double p, std::uint64_t seed);

// BFS distances from src; unreachable nodes get -1. max_depth < 0 means
// unbounded.
std::vector<int> bfs_distances(const AdjList& adj, NodeId src,
                               int max_depth = -1);

// Wraps an adjacency list as a SocialGraph with realized degrees as intended.
SocialGraph graph_from_adjacency(AdjList adj);

// Connected component id per node plus component sizes.
struct Components {
  std::vector<int> comp;
  std::vector<int> size;
};
Components connected_components(const AdjList& adj);

}  // namespace fractalcap
