#include "fractalcap/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fractalcap/rng.hpp"

namespace fractalcap {

int tdma_parameters(double c1, double delta) {
  if (!(c1 > 0.0)) throw std::domain_error("tdma_parameters: c1 must be > 0");
  if (delta < 0.0) throw std::domain_error("tdma_parameters: delta must be >= 0");
  return static_cast<int>(std::ceil((2.0 + delta) / c1)) + 1;
}

Deployment deploy(int n, double c0, double c1, double delta,
                  std::uint64_t seed) {
  if (n < 2) throw std::domain_error("deploy: n must be >= 2");
  if (!(c0 > 0.0) || !(c1 > 0.0)) {
    throw std::domain_error("deploy: constants must be > 0");
  }
  if (delta < 0.0) throw std::domain_error("deploy: delta must be >= 0");

  Deployment dep;
  dep.n = n;
  dep.c0 = c0;
  dep.c1 = c1;
  dep.delta = delta;
  dep.range = c0 * std::sqrt(std::log(static_cast<double>(n)) / n);
  dep.cell_side = c1 * dep.range;
  dep.dims = static_cast<int>(std::floor(1.0 / dep.cell_side));
  if (dep.dims < 2) {
    throw std::invalid_argument(
        "deploy: grid has fewer than 2 cells per axis; n too small for the "
        "chosen constants");
  }
  dep.tdma = tdma_parameters(c1, delta);

  Rng rng(derive_seed(seed, 0x6465706cULL));
  dep.x.resize(n);
  dep.y.resize(n);
  dep.cell_i.resize(n);
  dep.cell_j.resize(n);
  for (int v = 0; v < n; ++v) {
    dep.x[v] = rng.uniform01();
    dep.y[v] = rng.uniform01();
    dep.cell_i[v] = std::min(dep.dims - 1,
                             static_cast<int>(dep.x[v] / dep.cell_side));
    dep.cell_j[v] = std::min(dep.dims - 1,
                             static_cast<int>(dep.y[v] / dep.cell_side));
  }
  return dep;
}

double occupancy_report(const Deployment& dep) {
  std::vector<char> occupied(static_cast<std::size_t>(dep.cells()), 0);
  for (int v = 0; v < dep.n; ++v) {
    occupied[static_cast<std::size_t>(dep.cell_i[v]) * dep.dims +
             dep.cell_j[v]] = 1;
  }
  long long empty = 0;
  for (char c : occupied) {
    if (!c) ++empty;
  }
  return static_cast<double>(empty) / static_cast<double>(dep.cells());
}

int grid_hops(const Deployment& dep, std::uint32_t u, std::uint32_t v) {
  return std::abs(dep.cell_i[u] - dep.cell_i[v]) +
         std::abs(dep.cell_j[u] - dep.cell_j[v]);
}

long protocol_check(const Deployment& dep, long samples, std::uint64_t seed) {
  if (dep.tdma < 1) throw std::domain_error("protocol_check: T must be >= 1");
  Rng rng(derive_seed(seed, 0x70726f74ULL));
  const int dims = dep.dims;
  const int t = dep.tdma;
  const double cs = dep.cell_side;
  long violations = 0;

  constexpr int kDx[4] = {1, -1, 0, 0};
  constexpr int kDy[4] = {0, 0, 1, -1};

  for (long s = 0; s < samples; ++s) {
    const int ai = static_cast<int>(rng.below(dims));
    const int aj = static_cast<int>(rng.below(dims));
    // receiver cell adjacent to the transmitter cell
    int bi = -1, bj = -1;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const int dir = static_cast<int>(rng.below(4));
      const int ci = ai + kDx[dir];
      const int cj = aj + kDy[dir];
      if (ci >= 0 && ci < dims && cj >= 0 && cj < dims) {
        bi = ci;
        bj = cj;
        break;
      }
    }
    if (bi < 0) continue;

    const double xi = (ai + rng.uniform01()) * cs;
    const double yi = (aj + rng.uniform01()) * cs;
    double xj = 0.0, yj = 0.0;
    bool found = false;
    for (int attempt = 0; attempt < 256; ++attempt) {
      xj = (bi + rng.uniform01()) * cs;
      yj = (bj + rng.uniform01()) * cs;
      const double d = std::hypot(xi - xj, yi - yj);
      if (d <= dep.range && d > 0.0) {
        found = true;
        break;
      }
    }
    if (!found) continue;

    // random co-phase cell other than the transmitter's
    const int nx = (dims - 1 - ai % t) / t + 1;  // cells with i = ai (mod t)
    const int ny = (dims - 1 - aj % t) / t + 1;
    const long co = static_cast<long>(nx) * ny;
    if (co <= 1) continue;  // no interferer exists
    long pick = static_cast<long>(rng.below(static_cast<std::uint64_t>(co - 1)));
    const long self = static_cast<long>(ai / t) * ny + (aj / t);
    if (pick >= self) ++pick;
    const int ki = (ai % t) + static_cast<int>(pick / ny) * t;
    const int kj = (aj % t) + static_cast<int>(pick % ny) * t;

    const double xk = (ki + rng.uniform01()) * cs;
    const double yk = (kj + rng.uniform01()) * cs;
    const double tx_rx = std::hypot(xi - xj, yi - yj);
    const double intf = std::hypot(xk - xi, yk - yi);
    if (intf < (1.0 + dep.delta) * tx_rx) ++violations;
  }
  return violations;
}

void write_deployment_csv(const Deployment& dep, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_deployment_csv: cannot open " + path);
  out << "node,x,y,cell_i,cell_j\n";
  char buf[160];
  for (int v = 0; v < dep.n; ++v) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d,%d\n", v, dep.x[v],
                  dep.y[v], dep.cell_i[v], dep.cell_j[v]);
    out << buf;
  }
}

}  // namespace fractalcap
