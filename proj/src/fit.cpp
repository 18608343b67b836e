#include "fractalcap/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace fractalcap {

FitResult linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("linear_fit: size mismatch");
  }
  const std::size_t n = x.size();
  if (n < 2) throw std::domain_error("linear_fit: need at least 2 points");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw std::domain_error("linear_fit: degenerate x values");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy <= 0.0) {
    fit.r2 = 0.0;  // constant y: slope is 0 but no variance to explain
  } else {
    double ssres = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - (fit.slope * x[i] + fit.intercept);
      ssres += e * e;
    }
    fit.r2 = 1.0 - ssres / syy;
  }
  return fit;
}

FitResult loglog_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("loglog_fit: size mismatch");
  }
  if (x.size() < 3) throw std::domain_error("loglog_fit: need at least 3 points");
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::domain_error("loglog_fit: values must be positive");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return linear_fit(lx, ly);
}

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

PowerFit fit_powerlaw_histogram(const std::vector<long long>& counts) {
  int distinct = 0;
  for (long long c : counts) {
    if (c > 0) ++distinct;
  }
  if (distinct < 2) {
    throw std::domain_error("fit_powerlaw_histogram: degenerate histogram");
  }

  // Geometric bins [lo, lo*b) with b = 2^(1/2); per-bin density
  // (total count / integer width) plotted at the geometric mean degree.
  const double base = std::sqrt(2.0);
  std::vector<double> xs, ys;
  double lo = 1.0;
  while (lo <= static_cast<double>(counts.size())) {
    double hi = lo * base;
    const int klo = static_cast<int>(std::ceil(lo));
    const int khi = static_cast<int>(std::ceil(hi)) - 1;
    long long total = 0;
    int width = 0;
    for (int k = klo; k <= khi && k <= static_cast<int>(counts.size()); ++k) {
      total += counts[k - 1];
      ++width;
    }
    if (width > 0 && total > 0) {
      xs.push_back(std::sqrt(static_cast<double>(klo) * static_cast<double>(khi)));
      ys.push_back(static_cast<double>(total) / width);
    }
    lo = hi;
  }
  if (xs.size() < 3) {
    // Too few populated bins for a binned fit; fall back to raw points.
    xs.clear();
    ys.clear();
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] > 0) {
        xs.push_back(static_cast<double>(k + 1));
        ys.push_back(static_cast<double>(counts[k]));
      }
    }
  }
  if (xs.size() < 2) {
    throw std::domain_error("fit_powerlaw_histogram: degenerate histogram");
  }
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  const FitResult fit = linear_fit(lx, ly);
  return PowerFit{-fit.slope, fit.r2};
}

}  // namespace fractalcap
