#pragma once

#include <cmath>
#include <limits>

namespace fractalcap {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(e^a + e^b)
inline double log_add_exp(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// log(e^a - e^b), requires a >= b; equal inputs collapse to log(0).
inline double log_sub_exp(double a, double b) {
  if (b == kLogZero) return a;
  if (b >= a) return kLogZero;
  return a + std::log1p(-std::exp(b - a));
}

}  // namespace fractalcap
