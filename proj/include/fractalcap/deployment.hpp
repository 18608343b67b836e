#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fractalcap {

// Physical placement on the unit square with the cell grid and TDMA phase
// spacing derived from it. range = c0 * sqrt(ln n / n); cells have side
// c1 * range; the grid has floor(1/cell_side) cells per axis (positions in
// the leftover strip clamp to the last cell).
struct Deployment {
  int n = 0;
  double c0 = 1.0;
  double c1 = 1.0;
  double delta = 1.0;
  double range = 0.0;
  double cell_side = 0.0;
  int dims = 0;   // cells per axis
  int tdma = 0;   // phase spacing T; phases form a T x T pattern
  std::vector<double> x, y;
  std::vector<int> cell_i, cell_j;

  long long cells() const { return static_cast<long long>(dims) * dims; }
};

// T = ceil((2 + delta)/c1) + 1, so co-slot transmitters in nearest co-phase
// cells are at least (2 + delta) * range apart.
int tdma_parameters(double c1, double delta);

Deployment deploy(int n, double c0, double c1, double delta,
                  std::uint64_t seed);

// Fraction of grid cells containing no node. Informational; routing works on
// cell geometry regardless of occupancy.
double occupancy_report(const Deployment& dep);

// Manhattan distance between the cells of u and v.
int grid_hops(const Deployment& dep, std::uint32_t u, std::uint32_t v);

// Samples co-phase interferer geometries for transmissions into adjacent
// cells (receiver constrained to the transmission range) and counts
// violations of |X_k - X_i| >= (1 + delta) |X_i - X_j|. Zero under the T
// formula above.
long protocol_check(const Deployment& dep, long samples, std::uint64_t seed);

void write_deployment_csv(const Deployment& dep, const std::string& path);

}  // namespace fractalcap
