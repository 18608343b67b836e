// Verification gate: runs every acceptance criterion at its pinned tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <cstdio>

#include "fractalcap/acceptance.hpp"

int main() {
  const auto results = fractalcap::run_acceptance(true);
  int failed = 0;
  std::printf("\n");
  for (const auto& r : results) {
    std::printf("%-4s %s  %s\n       target: %s\n       measured: %s (tolerance: %s)\n",
                r.id.c_str(), r.pass ? "PASS" : "FAIL",
                r.pass ? "" : "<<<", r.target.c_str(), r.measured.c_str(),
                r.tolerance.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("\n%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed;
}
