#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fractalcap/graph.hpp"

namespace fractalcap {

// Partition of the nodes into boxes. The box size convention is inclusive:
// intra-box shortest-path diameter <= l_B, measured in the original graph.
// strict = true switches to the "< l_B" convention used by part of the
// box-covering literature.
struct BoxCovering {
  int l_b = 0;
  bool strict = false;
  std::vector<std::int32_t> box_of;            // node -> box id
  std::vector<std::vector<NodeId>> boxes;      // box id -> members

  int box_count() const { return static_cast<int>(boxes.size()); }
};

// Greedy covering: nodes conflict when their graph distance exceeds the
// budget; nodes are processed in a seeded random order and join the smallest
// non-conflicting box. Not guaranteed minimal.
BoxCovering cover_greedy(const AdjList& adj, int l_b, std::uint64_t seed,
                         bool strict = false);

// Provably minimal covering by exhaustive subset DP. Budgeted to n <= 16.
BoxCovering cover_exact(const AdjList& adj, int l_b, bool strict = false);

// One node per box; boxes are adjacent when any cross-box edge exists.
AdjList renormalize(const AdjList& adj, const BoxCovering& covering);

struct BoxStats {
  int k_b = 0;    // number of distinct neighboring boxes
  int k_hub = 0;  // maximum member degree in the original graph
  int n_h = 0;    // hub edges leaving the box
  NodeId hub = 0; // lowest id among maximum-degree members
};

std::vector<BoxStats> box_stats(const AdjList& adj, const BoxCovering& covering);

// Throws unless the covering is a partition into boxes that satisfy the
// diameter budget (checked exhaustively with per-member BFS).
void validate_covering(const AdjList& adj, const BoxCovering& covering);

struct FractalFit {
  std::vector<int> lb_grid;
  std::vector<int> nb;                 // box counts per size
  std::vector<double> mean_kb_khub;    // mean per-box k_B / k_hub
  std::vector<double> mean_nh_kb;      // mean per-box n_h / k_B
  double d_b = 0.0, d_g = 0.0, d_e = 0.0;
  double r2_db = 0.0, r2_dg = 0.0, r2_de = 0.0;
  // emitted only when both contributing fits have r2 >= 0.9
  std::optional<double> gamma_hat;
  std::optional<double> epsilon_hat;
};

// Greedy coverings over the grid, then least-squares fits of
// log(N_B/n), log(mean k_B/k_hub), log(mean n_h/k_B) against log(l_B + 1).
// l_B + 1 is the number of nodes spanned along a geodesic, which makes the
// path-graph box dimension exactly 1.
FractalFit fit_fractal_exponents(const AdjList& adj,
                                 const std::vector<int>& lb_grid,
                                 std::uint64_t seed);

void write_covering_csv(const BoxCovering& covering, const std::string& path);
void write_fit_json(const FractalFit& fit, const std::string& path);

}  // namespace fractalcap
