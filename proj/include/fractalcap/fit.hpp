#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fractalcap {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares y = slope*x + intercept. Needs >= 2 points and
// non-degenerate x. r2 is reported as 0 when y has zero variance.
FitResult linear_fit(std::span<const double> x, std::span<const double> y);

// OLS on (log x, log y). Needs >= 3 strictly positive points.
FitResult loglog_fit(std::span<const double> x, std::span<const double> y);

// Pearson correlation; empty when either side has zero variance.
std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

struct PowerFit {
  double exponent = 0.0;  // estimate of a in counts ~ k^-a
  double r2 = 0.0;
};

// Log-log fit of a degree histogram with logarithmic binning.
// counts[i] is the number of observations of degree i+1. Bins grow
// geometrically; each bin contributes (geometric-mean degree, mean count).
// Throws if fewer than two distinct degrees are populated.
PowerFit fit_powerlaw_histogram(const std::vector<long long>& counts);

}  // namespace fractalcap
