#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fractalcap/social_graph.hpp"
#include "fractalcap/traffic.hpp"

namespace fractalcap {

// Sweep configuration, loaded from a single JSON document with exactly these
// field names. Unknown fields are rejected so a typo cannot silently change
// an experiment.
struct ExperimentConfig {
  std::vector<long> n_values = {2048, 4096, 8192, 16384, 32768, 65536};
  double gamma = 2.5;
  double epsilon = 2.5;
  KmaxRule kmax_rule = KmaxRule::sqrt_n;
  DestinationRule::Kind rule = DestinationRule::Kind::uniform;
  bool hierarchical = false;  // rule field value "hierarchical"
  double beta = 0.0;
  double c0 = 1.0;
  // Default cell constant keeps one-cell relay steps inside the transmission
  // range: the far corners of adjacent cells are sqrt(5)*c1*r apart, so any
  // c1 <= 1/sqrt(5) ~ 0.447 makes every hop feasible under the protocol model.
  double c1 = 0.4;
  double delta = 1.0;
  long trials = 10000;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string output_dir = "out";

  std::string rule_name() const;
  void validate() const;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
};

struct SweepRow {
  std::string experiment_id;
  long n = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  std::string rule;
  std::optional<double> beta;
  long trials = 0;
  double mean_hops = 0.0;
  double stderr_hops = 0.0;
  long long cells = 0;
  int tdma = 0;
  double lambda_est = 0.0;
  double empty_cell_fraction = 0.0;
  double runtime_ms = 0.0;
};

// One row per (n, seed) in config order: generate the graph, deploy, estimate
// hops under the configured rule, compose the capacity estimate. Rows are
// deterministic for a given config at any job count; runtime_ms is the only
// environment-dependent column. A failed row is logged to stderr and skipped.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, int jobs = 1);

extern const char* const kSweepCsvHeader;

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> read_sweep_csv(const std::string& path);

// CSV bytes with the runtime column stripped, for determinism comparisons.
std::string sweep_csv_without_runtime(const std::string& path);

}  // namespace fractalcap
