#pragma once

#include <cstdint>
#include <vector>

#include "fractalcap/deployment.hpp"
#include "fractalcap/social_graph.hpp"
#include "fractalcap/traffic.hpp"

namespace fractalcap {

struct TransportResult {
  bool stable = false;
  std::vector<double> mean_queue;  // per round, total packets / cells
  long long generated = 0;
  long long delivered = 0;
};

// Slotted transport simulation on the cell grid. Each round one TDMA phase is
// active; every active cell forwards one queued packet (FIFO) one cell toward
// its destination, x before y. Each user generates a packet with probability
// lambda per round toward a rule-selected destination. Stability compares
// the mean queue level of the last quarter of rounds against twice the
// second quarter. Requires rounds >= T^2.
TransportResult transport_stability_sim(const SocialGraph& graph,
                                        const Deployment& dep,
                                        const DestinationRule& rule,
                                        double lambda, long rounds,
                                        std::uint64_t seed);

}  // namespace fractalcap
