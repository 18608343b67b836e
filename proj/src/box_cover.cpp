#include "fractalcap/box_cover.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "fractalcap/fit.hpp"
#include "fractalcap/rng.hpp"

#include "json.hpp"

namespace fractalcap {

namespace {

int diameter_budget(int l_b, bool strict) { return strict ? l_b - 1 : l_b; }

// Ball of radius r around v over the whole graph (covered nodes included;
// distances are always original-graph distances).
std::vector<NodeId> ball_members(const AdjList& adj, NodeId v, int r) {
  std::vector<NodeId> out;
  std::vector<int> dist(adj.size(), -1);
  std::queue<NodeId> queue;
  dist[v] = 0;
  queue.push(v);
  out.push_back(v);
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop();
    if (dist[x] == r) continue;
    for (NodeId u : adj[x]) {
      if (dist[u] < 0) {
        dist[u] = dist[x] + 1;
        out.push_back(u);
        queue.push(u);
      }
    }
  }
  return out;
}

}  // namespace

// Largest-first sequential covering. Candidate boxes are radius-(budget/2)
// balls around nodes plus edge-anchored ball unions; both satisfy the
// diameter budget by construction. Each round selects the candidate with the
// best (covered count - uncovered boundary) key, then extends the box with
// every compatible uncovered node. Candidate coverage counts are maintained
// incrementally as nodes get covered.
BoxCovering cover_greedy(const AdjList& adj, int l_b, std::uint64_t seed,
                         bool strict) {
  if (l_b < 1) throw std::domain_error("cover_greedy: l_b must be >= 1");
  const int n = static_cast<int>(adj.size());
  if (n == 0) throw std::domain_error("cover_greedy: empty graph");

  BoxCovering cov;
  cov.l_b = l_b;
  cov.strict = strict;
  cov.box_of.assign(n, -1);
  const int budget = std::max(0, diameter_budget(l_b, strict));
  const int radius = budget / 2;
  // Edge-anchored candidates: ball(u, a) + ball(v, b) across an edge spans
  // diameter a + 1 + b <= budget. They reach node sets that node-centered
  // balls cannot (pairs at budget 1, lopsided clusters at budget 2).
  const bool use_edges = budget >= 1;
  const int e_lo = std::max(0, (budget - 1) / 2);
  const int e_hi = std::max(0, budget - 1 - e_lo);

  // Candidate ids: [0, n) node balls, [n, n + edge cands) edge-anchored
  // unions. Lopsided unions are directional, so both orientations are
  // candidates when the two radii differ.
  std::vector<std::pair<NodeId, NodeId>> edge_cands;
  std::vector<std::vector<std::uint32_t>> incident(use_edges ? n : 0);
  if (use_edges) {
    const auto add_edge_cand = [&](NodeId a, NodeId b) {
      incident[a].push_back(static_cast<std::uint32_t>(edge_cands.size()));
      incident[b].push_back(static_cast<std::uint32_t>(edge_cands.size()));
      edge_cands.emplace_back(a, b);
    };
    for (int u = 0; u < n; ++u) {
      for (NodeId v : adj[u]) {
        if (v <= static_cast<NodeId>(u)) continue;
        add_edge_cand(static_cast<NodeId>(u), v);
        if (e_lo != e_hi) add_edge_cand(v, static_cast<NodeId>(u));
      }
    }
  }
  const std::size_t n_cands = n + edge_cands.size();

  const auto members_of = [&](std::size_t cand) {
    if (cand < static_cast<std::size_t>(n)) {
      return ball_members(adj, static_cast<NodeId>(cand), radius);
    }
    const auto [a, b] = edge_cands[cand - n];
    std::vector<NodeId> m = ball_members(adj, a, e_lo);
    for (NodeId x : ball_members(adj, b, e_hi)) m.push_back(x);
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
  };

  std::vector<int> score(n_cands, 0);
  for (std::size_t c = 0; c < n_cands; ++c) {
    score[c] = static_cast<int>(members_of(c).size());
  }

  std::vector<std::size_t> scan_order(n_cands);
  std::iota(scan_order.begin(), scan_order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, 0x626f78ULL));
  rng.shuffle(scan_order);

  std::vector<char> covered(n, 0);
  std::vector<char> mark(n, 0);
  std::vector<char> mark_lo(n, 0);
  std::vector<char> edge_seen(edge_cands.size(), 0);
  std::vector<int> compat(n, 0);
  int remaining = n;

  // Covering w removes it from every candidate containing it: node balls
  // with center within `radius` of w, edge unions with the near anchor
  // within e_lo or the far anchor within e_hi (== radius) of w.
  const auto cover_node = [&](NodeId w) {
    covered[w] = 1;
    --remaining;
    std::vector<int> dist(n, -1);
    std::vector<NodeId> near;
    dist[w] = 0;
    near.push_back(w);
    std::queue<NodeId> queue;
    queue.push(w);
    while (!queue.empty()) {
      const NodeId x = queue.front();
      queue.pop();
      if (dist[x] == radius) continue;
      for (NodeId u : adj[x]) {
        if (dist[u] < 0) {
          dist[u] = dist[x] + 1;
          near.push_back(u);
          queue.push(u);
        }
      }
    }
    for (NodeId c : near) {
      --score[c];
      mark[c] = 1;
      mark_lo[c] = dist[c] <= e_lo ? 1 : 0;
    }
    if (use_edges) {
      std::vector<std::uint32_t> touched_edges;
      for (NodeId c : near) {
        for (std::uint32_t e : incident[c]) {
          if (edge_seen[e]) continue;
          edge_seen[e] = 1;
          touched_edges.push_back(e);
          const auto [a, b] = edge_cands[e];
          if ((mark_lo[a]) || (mark[b])) --score[n + e];
        }
      }
      for (std::uint32_t e : touched_edges) edge_seen[e] = 0;
    }
    for (NodeId c : near) {
      mark[c] = 0;
      mark_lo[c] = 0;
    }
  };

  while (remaining > 0) {
    // Selection key: covered count minus the uncovered boundary left behind.
    // Raw coverage alone orphans leaf tips around hubs (a spider's center
    // ball strands every leg end); penalizing the frontier repairs that.
    // Only candidates near the top raw score can win, so the refined key is
    // evaluated over a bounded window scanned in permutation order.
    int best_score = 0;
    for (std::size_t c = 0; c < n_cands; ++c) {
      best_score = std::max(best_score, score[c]);
    }
    constexpr int kWindow = 512;
    constexpr int kScoreSlack = 8;
    const int floor_score = std::max(1, best_score - kScoreSlack);
    std::size_t chosen = n_cands;
    int chosen_key = 0, chosen_boundary = 0;
    int inspected = 0;
    for (std::size_t c : scan_order) {
      if (score[c] < floor_score) continue;
      std::vector<NodeId> mem = members_of(c);
      int boundary = 0;
      for (NodeId v : mem) mark[v] = 1;
      for (NodeId v : mem) {
        if (covered[v]) continue;
        for (NodeId u : adj[v]) {
          if (!mark[u] && !covered[u]) ++boundary;
        }
      }
      for (NodeId v : mem) mark[v] = 0;
      const int key = score[c] - boundary;
      if (chosen == n_cands || key > chosen_key ||
          (key == chosen_key && boundary < chosen_boundary)) {
        chosen = c;
        chosen_key = key;
        chosen_boundary = boundary;
      }
      if (++inspected >= kWindow) break;
    }

    // materialize the box and extend it with every compatible uncovered node
    std::vector<NodeId> box;
    for (NodeId v : members_of(chosen)) {
      if (!covered[v]) box.push_back(v);
    }
    std::vector<NodeId> touched;
    for (NodeId m : box) {
      for (NodeId v : ball_members(adj, m, budget)) {
        if (compat[v] == 0) touched.push_back(v);
        ++compat[v];
      }
    }
    int box_size = static_cast<int>(box.size());
    for (std::size_t c : scan_order) {
      if (c >= static_cast<std::size_t>(n)) continue;
      const NodeId v = static_cast<NodeId>(c);
      if (covered[v] || compat[v] != box_size) continue;
      if (std::find(box.begin(), box.end(), v) != box.end()) continue;
      box.push_back(v);
      ++box_size;
      for (NodeId u : ball_members(adj, v, budget)) {
        if (compat[u] == 0) touched.push_back(u);
        ++compat[u];
      }
    }
    for (NodeId v : touched) compat[v] = 0;

    const int id = cov.box_count();
    std::sort(box.begin(), box.end());
    for (NodeId v : box) {
      cov.box_of[v] = id;
      cover_node(v);
    }
    cov.boxes.push_back(std::move(box));
  }
  // No merge pass: extension already made every box maximal against the
  // nodes that were uncovered when it closed, so no later box can fold into
  // an earlier one.
  return cov;
}

BoxCovering cover_exact(const AdjList& adj, int l_b, bool strict) {
  if (l_b < 1) throw std::domain_error("cover_exact: l_b must be >= 1");
  const int n = static_cast<int>(adj.size());
  if (n == 0) throw std::domain_error("cover_exact: empty graph");
  if (n > 16) throw std::runtime_error("cover_exact: exhaustive search budget is n <= 16");

  const int budget = diameter_budget(l_b, strict);
  std::vector<std::vector<int>> dist(n);
  for (int v = 0; v < n; ++v) {
    dist[v] = bfs_distances(adj, static_cast<NodeId>(v));
  }

  const unsigned full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  std::vector<char> feasible(full + 1u, 0);
  feasible[0] = 0;
  for (unsigned mask = 1; mask <= full; ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!(mask & (1u << j))) continue;
        if (dist[i][j] < 0 || dist[i][j] > budget) {
          ok = false;
          break;
        }
      }
    }
    feasible[mask] = ok ? 1 : 0;
  }

  constexpr int kInf = 1 << 28;
  std::vector<int> best(full + 1u, kInf);
  std::vector<unsigned> choice(full + 1u, 0);
  best[0] = 0;
  for (unsigned mask = 1; mask <= full; ++mask) {
    const unsigned low = mask & (~mask + 1u);
    // Enumerate submasks containing the lowest set node.
    for (unsigned sub = mask; sub != 0; sub = (sub - 1) & mask) {
      if (!(sub & low) || !feasible[sub]) continue;
      const int cand = best[mask ^ sub] + 1;
      if (cand < best[mask]) {
        best[mask] = cand;
        choice[mask] = sub;
      }
    }
  }

  BoxCovering cov;
  cov.l_b = l_b;
  cov.strict = strict;
  cov.box_of.assign(n, -1);
  unsigned rest = full;
  while (rest != 0) {
    const unsigned sub = choice[rest];
    std::vector<NodeId> box;
    for (int i = 0; i < n; ++i) {
      if (sub & (1u << i)) box.push_back(static_cast<NodeId>(i));
    }
    const int id = cov.box_count();
    for (NodeId v : box) cov.box_of[v] = id;
    cov.boxes.push_back(std::move(box));
    rest ^= sub;
  }
  return cov;
}

AdjList renormalize(const AdjList& adj, const BoxCovering& covering) {
  const int nb = covering.box_count();
  std::vector<std::vector<NodeId>> out(nb);
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (NodeId v : adj[u]) {
      const int bu = covering.box_of[u];
      const int bv = covering.box_of[v];
      if (bu != bv) out[bu].push_back(static_cast<NodeId>(bv));
    }
  }
  for (auto& nbrs : out) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return out;
}

std::vector<BoxStats> box_stats(const AdjList& adj, const BoxCovering& covering) {
  const int nb = covering.box_count();
  std::vector<BoxStats> stats(nb);
  const AdjList quotient = renormalize(adj, covering);
  for (int b = 0; b < nb; ++b) {
    BoxStats& s = stats[b];
    s.k_b = static_cast<int>(quotient[b].size());
    s.k_hub = -1;
    for (NodeId v : covering.boxes[b]) {
      const int d = static_cast<int>(adj[v].size());
      if (d > s.k_hub) {
        s.k_hub = d;
        s.hub = v;
      }
    }
    s.n_h = 0;
    for (NodeId u : adj[s.hub]) {
      if (covering.box_of[u] != b) ++s.n_h;
    }
  }
  return stats;
}

void validate_covering(const AdjList& adj, const BoxCovering& covering) {
  const int n = static_cast<int>(adj.size());
  if (static_cast<int>(covering.box_of.size()) != n) {
    throw std::runtime_error("validate_covering: assignment size mismatch");
  }
  std::vector<int> seen(n, 0);
  for (int b = 0; b < covering.box_count(); ++b) {
    if (covering.boxes[b].empty()) {
      throw std::runtime_error("validate_covering: empty box");
    }
    for (NodeId v : covering.boxes[b]) {
      if (covering.box_of[v] != b) {
        throw std::runtime_error("validate_covering: inconsistent assignment");
      }
      seen[v] += 1;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (seen[v] != 1) throw std::runtime_error("validate_covering: not a partition");
  }
  const int budget = diameter_budget(covering.l_b, covering.strict);
  for (const auto& box : covering.boxes) {
    for (NodeId v : box) {
      const std::vector<int> dist = bfs_distances(adj, v);
      for (NodeId u : box) {
        if (dist[u] < 0 || dist[u] > budget) {
          throw std::runtime_error("validate_covering: diameter budget exceeded");
        }
      }
    }
  }
}

FractalFit fit_fractal_exponents(const AdjList& adj,
                                 const std::vector<int>& lb_grid,
                                 std::uint64_t seed) {
  if (lb_grid.size() < 3) {
    throw std::domain_error("fit_fractal_exponents: need at least 3 box sizes");
  }
  const double n = static_cast<double>(adj.size());

  FractalFit fit;
  fit.lb_grid = lb_grid;
  std::vector<double> scale, nb_frac, kb_ratio, nh_ratio;
  for (int l_b : lb_grid) {
    const BoxCovering cov = cover_greedy(adj, l_b, seed);
    const std::vector<BoxStats> stats = box_stats(adj, cov);
    fit.nb.push_back(cov.box_count());

    double kb_sum = 0.0;
    long kb_cnt = 0;
    double nh_sum = 0.0;
    long nh_cnt = 0;
    for (const BoxStats& s : stats) {
      if (s.k_hub > 0) {
        kb_sum += static_cast<double>(s.k_b) / s.k_hub;
        ++kb_cnt;
      }
      if (s.k_b > 0) {
        nh_sum += static_cast<double>(s.n_h) / s.k_b;
        ++nh_cnt;
      }
    }
    fit.mean_kb_khub.push_back(kb_cnt > 0 ? kb_sum / kb_cnt : 0.0);
    fit.mean_nh_kb.push_back(nh_cnt > 0 ? nh_sum / nh_cnt : 0.0);

    scale.push_back(static_cast<double>(l_b) + 1.0);
    nb_frac.push_back(cov.box_count() / n);
    kb_ratio.push_back(fit.mean_kb_khub.back());
    nh_ratio.push_back(fit.mean_nh_kb.back());
  }

  const auto slope_of = [&](const std::vector<double>& ys, double* d,
                            double* r2) {
    for (double y : ys) {
      if (!(y > 0.0)) {
        *d = 0.0;
        *r2 = 0.0;
        return;
      }
    }
    const FitResult f = loglog_fit(scale, ys);
    *d = -f.slope;
    *r2 = f.r2;
  };
  slope_of(nb_frac, &fit.d_b, &fit.r2_db);
  slope_of(kb_ratio, &fit.d_g, &fit.r2_dg);
  slope_of(nh_ratio, &fit.d_e, &fit.r2_de);

  constexpr double kGate = 0.9;
  if (fit.r2_db >= kGate && fit.r2_dg >= kGate && std::abs(fit.d_g) > 1e-12) {
    fit.gamma_hat = 1.0 + fit.d_b / fit.d_g;
  }
  if (fit.r2_de >= kGate && fit.r2_dg >= kGate && std::abs(fit.d_g) > 1e-12) {
    fit.epsilon_hat = 2.0 + fit.d_e / fit.d_g;
  }
  return fit;
}

void write_covering_csv(const BoxCovering& covering, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_covering_csv: cannot open " + path);
  out << "node,box\n";
  for (std::size_t v = 0; v < covering.box_of.size(); ++v) {
    out << v << "," << covering.box_of[v] << "\n";
  }
}

void write_fit_json(const FractalFit& fit, const std::string& path) {
  nlohmann::ordered_json j;
  j["lB_grid"] = fit.lb_grid;
  j["NB"] = fit.nb;
  j["dB"] = fit.d_b;
  j["dg"] = fit.d_g;
  j["de"] = fit.d_e;
  j["r2_dB"] = fit.r2_db;
  j["r2_dg"] = fit.r2_dg;
  j["r2_de"] = fit.r2_de;
  if (fit.gamma_hat) j["gamma_hat"] = *fit.gamma_hat;
  else j["gamma_hat"] = nullptr;
  if (fit.epsilon_hat) j["epsilon_hat"] = *fit.epsilon_hat;
  else j["epsilon_hat"] = nullptr;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_fit_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace fractalcap
