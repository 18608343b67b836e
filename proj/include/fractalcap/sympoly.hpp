#pragma once

#include <span>
#include <vector>

namespace fractalcap {

// Triangular table of elementary symmetric polynomials over positive weights,
// kept in the log domain. sigma(p, j) is the order-p polynomial over the
// first j weights; sigma(0, j) = 1 and sigma(p, j) = 0 for p > j. Values
// underflow a double long before N reaches interesting sizes, hence log form.
//
// Tables are immutable after construction and safe for concurrent reads.
class SymPolyTable {
 public:
  // weights must be strictly positive and finite; 1 <= p_max <= N.
  static SymPolyTable build(std::span<const double> weights, int p_max);

  int size() const { return n_; }
  int p_max() const { return p_max_; }

  // log sigma_{p,j}; -inf encodes sigma = 0.
  double log_sigma(int p, int j) const;
  // sigma_{p,j} in the linear domain (may overflow for extreme weights).
  double sigma(int p, int j) const;

  double log_weight(int k) const { return log_weights_[k - 1]; }  // 1-based
  const std::vector<double>& log_weights() const { return log_weights_; }

 private:
  SymPolyTable() = default;
  int n_ = 0;
  int p_max_ = 0;
  std::vector<double> log_weights_;
  std::vector<double> table_;  // (p_max+1) x (n+1), row-major
};

// log sigma_{p,N-1} over all weights except the k-th (1-based), obtained by
// rebuilding the table without that weight. This is the reference path.
double excluded_log_sigma(const SymPolyTable& table, int k, int p);

// Same quantity via the subtractive downdate
//   sigma^k_{p} = sigma_{p,N} - w_k * sigma^k_{p-1}.
// Log-domain subtraction loses precision when the terms nearly cancel, so
// this path is an optimization that callers must cross-check against the
// rebuild before trusting.
double excluded_log_sigma_downdate(const SymPolyTable& table, int k, int p);

// P(candidate k is among the q selected): w_k * sigma^k_{q-1,N-1} / sigma_{q,N}.
// Summed over k this is exactly q.
double contact_probability(std::span<const double> weights, int q, int k);

// sigma_{1,N} * sigma_{q,N} / ((q+1) * sigma_{q+1,N}).
// Equals N/(N-q) when all weights are equal. Requires N >= 2, 1 <= q <= N-1.
double sigma_ratio(std::span<const double> weights, int q);

}  // namespace fractalcap
