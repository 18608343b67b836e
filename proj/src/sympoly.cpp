#include "fractalcap/sympoly.hpp"

#include <cmath>
#include <stdexcept>

#include "fractalcap/logspace.hpp"

namespace fractalcap {

SymPolyTable SymPolyTable::build(std::span<const double> weights, int p_max) {
  const int n = static_cast<int>(weights.size());
  if (n == 0) throw std::domain_error("sympoly: empty weight vector");
  if (p_max < 1 || p_max > n) {
    throw std::domain_error("sympoly: p_max out of range [1, N]");
  }

  SymPolyTable t;
  t.n_ = n;
  t.p_max_ = p_max;
  t.log_weights_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw std::domain_error("sympoly: weights must be positive and finite");
    }
    t.log_weights_[i] = std::log(weights[i]);
  }

  t.table_.assign(static_cast<std::size_t>(p_max + 1) * (n + 1), kLogZero);
  for (int j = 0; j <= n; ++j) t.table_[j] = 0.0;  // sigma_{0,j} = 1

  // sigma_{p,j} = sigma_{p,j-1} + w_j * sigma_{p-1,j-1}
  for (int p = 1; p <= p_max; ++p) {
    double* row = &t.table_[static_cast<std::size_t>(p) * (n + 1)];
    const double* prev = &t.table_[static_cast<std::size_t>(p - 1) * (n + 1)];
    for (int j = p; j <= n; ++j) {
      row[j] = log_add_exp(row[j - 1], t.log_weights_[j - 1] + prev[j - 1]);
    }
  }
  return t;
}

double SymPolyTable::log_sigma(int p, int j) const {
  if (p < 0 || p > p_max_ || j < 0 || j > n_) {
    throw std::domain_error("sympoly: sigma index out of range");
  }
  return table_[static_cast<std::size_t>(p) * (n_ + 1) + j];
}

double SymPolyTable::sigma(int p, int j) const {
  return std::exp(log_sigma(p, j));
}

double excluded_log_sigma(const SymPolyTable& table, int k, int p) {
  const int n = table.size();
  if (k < 1 || k > n) throw std::domain_error("sympoly: excluded index out of range");
  if (p < 0 || p > n - 1) throw std::domain_error("sympoly: excluded order out of range");
  if (p == 0) return 0.0;

  // Rebuild over the N-1 remaining weights in the log domain.
  std::vector<double> row_prev(p + 1, kLogZero), row(p + 1, kLogZero);
  row_prev[0] = 0.0;
  row[0] = 0.0;
  int used = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == k) continue;
    ++used;
    const double lw = table.log_weight(i);
    const int top = std::min(p, used);
    for (int q = top; q >= 1; --q) {
      row[q] = log_add_exp(row_prev[q], lw + row_prev[q - 1]);
    }
    for (int q = 1; q <= top; ++q) row_prev[q] = row[q];
  }
  return row_prev[p];
}

double excluded_log_sigma_downdate(const SymPolyTable& table, int k, int p) {
  const int n = table.size();
  if (k < 1 || k > n) throw std::domain_error("sympoly: excluded index out of range");
  if (p < 0 || p > n - 1) throw std::domain_error("sympoly: excluded order out of range");
  if (p > table.p_max()) throw std::domain_error("sympoly: order exceeds table p_max");
  const double lw = table.log_weight(k);
  double acc = 0.0;  // log sigma^k_{0} = log 1
  for (int q = 1; q <= p; ++q) {
    acc = log_sub_exp(table.log_sigma(q, n), lw + acc);
  }
  return acc;
}

double contact_probability(std::span<const double> weights, int q, int k) {
  const int n = static_cast<int>(weights.size());
  if (q < 1 || q > n) {
    throw std::domain_error("contact_probability: q out of range [1, N]");
  }
  if (k < 1 || k > n) {
    throw std::domain_error("contact_probability: k out of range [1, N]");
  }
  const SymPolyTable table = SymPolyTable::build(weights, q);
  const double log_num =
      table.log_weight(k) + excluded_log_sigma(table, k, q - 1);
  return std::exp(log_num - table.log_sigma(q, n));
}

double sigma_ratio(std::span<const double> weights, int q) {
  const int n = static_cast<int>(weights.size());
  if (n < 2) throw std::domain_error("sigma_ratio: need at least 2 weights");
  if (q < 1 || q >= n) throw std::domain_error("sigma_ratio: q out of range [1, N-1]");
  const SymPolyTable table = SymPolyTable::build(weights, q + 1);
  const double log_ratio = table.log_sigma(1, n) + table.log_sigma(q, n) -
                           std::log(static_cast<double>(q) + 1.0) -
                           table.log_sigma(q + 1, n);
  return std::exp(log_ratio);
}

}  // namespace fractalcap
