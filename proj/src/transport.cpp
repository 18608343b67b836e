#include "fractalcap/transport.hpp"

#include <deque>
#include <stdexcept>

namespace fractalcap {

namespace {

struct Packet {
  int dest_i;
  int dest_j;
};

double quarter_mean(const std::vector<double>& series, int quarter) {
  const std::size_t n = series.size();
  const std::size_t begin = n * quarter / 4;
  const std::size_t end = n * (quarter + 1) / 4;
  if (end <= begin) return 0.0;
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) sum += series[i];
  return sum / static_cast<double>(end - begin);
}

}  // namespace

TransportResult transport_stability_sim(const SocialGraph& graph,
                                        const Deployment& dep,
                                        const DestinationRule& rule,
                                        double lambda, long rounds,
                                        std::uint64_t seed) {
  if (lambda < 0.0) throw std::domain_error("transport_stability_sim: lambda must be >= 0");
  const int t = dep.tdma;
  const long phases = static_cast<long>(t) * t;
  if (rounds < phases) {
    throw std::domain_error("transport_stability_sim: rounds must cover all phases");
  }
  const int dims = dep.dims;
  std::vector<std::deque<Packet>> queue(static_cast<std::size_t>(dims) * dims);
  const auto cell_index = [dims](int i, int j) {
    return static_cast<std::size_t>(i) * dims + j;
  };

  TransportResult result;
  result.mean_queue.reserve(rounds);
  Rng rng(derive_seed(seed, 0x7472616eULL));
  long long in_flight = 0;

  for (long round = 0; round < rounds; ++round) {
    // service: one packet per active cell
    const int phase = static_cast<int>(round % phases);
    const int pi = phase / t;
    const int pj = phase % t;
    for (int i = pi; i < dims; i += t) {
      for (int j = pj; j < dims; j += t) {
        auto& q = queue[cell_index(i, j)];
        if (q.empty()) continue;
        const Packet p = q.front();
        q.pop_front();
        if (p.dest_i == i && p.dest_j == j) {
          ++result.delivered;
          --in_flight;
          continue;
        }
        int ni = i, nj = j;
        if (p.dest_i != i) {
          ni += p.dest_i > i ? 1 : -1;
        } else {
          nj += p.dest_j > j ? 1 : -1;
        }
        if (ni == p.dest_i && nj == p.dest_j) {
          ++result.delivered;
          --in_flight;
        } else {
          queue[cell_index(ni, nj)].push_back(p);
        }
      }
    }

    // arrivals
    if (lambda > 0.0) {
      for (int v = 0; v < graph.n; ++v) {
        if (rng.uniform01() >= lambda) continue;
        const auto dst = select_destination(graph, dep,
                                            static_cast<NodeId>(v), rule, rng);
        if (!dst) continue;
        ++result.generated;
        const int di = dep.cell_i[*dst];
        const int dj = dep.cell_j[*dst];
        const int si = dep.cell_i[v];
        const int sj = dep.cell_j[v];
        if (di == si && dj == sj) {
          ++result.delivered;  // co-celled; no grid transport needed
          continue;
        }
        queue[cell_index(si, sj)].push_back(Packet{di, dj});
        ++in_flight;
      }
    }
    result.mean_queue.push_back(static_cast<double>(in_flight) /
                                static_cast<double>(dep.cells()));
  }

  const double q2 = quarter_mean(result.mean_queue, 1);
  const double q4 = quarter_mean(result.mean_queue, 3);
  result.stable = q4 <= 2.0 * q2;
  return result;
}

}  // namespace fractalcap
