#pragma once

#include <string>
#include <vector>

namespace fractalcap {

struct CriterionResult {
  std::string id;
  std::string target;
  std::string measured;
  std::string tolerance;
  bool pass = false;
};

// Runs the full verification suite (A1..A12). Parameters, tolerances and
// thresholds are pinned in code; everything is seeded and deterministic.
// Expect a couple of minutes of compute. progress != nullptr gets one line
// per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(bool verbose = false);

void write_verify_report(const std::vector<CriterionResult>& results,
                         const std::string& path);

}  // namespace fractalcap
