#include <stdexcept>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fractalcap/fit.hpp"
#include "fractalcap/rng.hpp"
#include "fractalcap/svg_plot.hpp"
#include "fractalcap/sweep.hpp"

using namespace fractalcap;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("linear fit: exact power law and constants") {
  {
    std::vector<double> x, y;
    for (double v : {1.0, 2.0, 4.0, 9.0, 16.0}) {
      x.push_back(v);
      y.push_back(3.0 * v * v);
    }
    const FitResult fit = loglog_fit(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y = {5.0, 5.0, 5.0, 5.0};
    const FitResult fit = loglog_fit(x, y);
    CHECK(fit.slope == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("noisy synthetic slope recovers within tolerance") {
  Rng rng(77);
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    const double v = 1.0 + i;
    x.push_back(v);
    y.push_back(std::pow(v, 1.5) * (1.0 + 0.01 * (2.0 * rng.uniform01() - 1.0)));
  }
  const FitResult fit = loglog_fit(x, y);
  CHECK(fit.slope == doctest::Approx(1.5).epsilon(0.05 / 1.5));
}

TEST_CASE("fits reject bad inputs") {
  const std::vector<double> two = {1.0, 2.0};
  CHECK_THROWS_AS(loglog_fit(two, two), std::domain_error);
  const std::vector<double> bad = {1.0, -2.0, 3.0};
  const std::vector<double> ok = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(loglog_fit(bad, ok), std::domain_error);
  CHECK_THROWS_AS(linear_fit(ok, two), std::invalid_argument);
  const std::vector<double> same = {2.0, 2.0, 2.0};
  CHECK_THROWS_AS(linear_fit(same, ok), std::domain_error);
}

TEST_CASE("config: defaults validate and unknown fields are rejected") {
  const ExperimentConfig def;
  def.validate();
  CHECK_THROWS_AS(
      ExperimentConfig::from_json_text("{\"n_vals\": [10]}"),
      std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("{\"gamma\": 1.5}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ExperimentConfig::from_json_text("{\"n_values\": [100, 50]}"),
      std::invalid_argument);
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(
      "{\"n_values\": [256, 512], \"gamma\": 2.7, \"epsilon\": 2.4,"
      " \"rule\": \"powerlaw\", \"beta\": 1.5, \"trials\": 100,"
      " \"seeds\": [1, 2], \"kmax_rule\": \"sqrt\", \"c0\": 1.0,"
      " \"c1\": 1.0, \"delta\": 1.0, \"output_dir\": \"x\"}");
  CHECK(cfg.gamma == 2.7);
  CHECK(cfg.rule == DestinationRule::Kind::powerlaw);
  CHECK(cfg.beta == 1.5);
}

TEST_CASE("sweep: one cell per (n, seed), deterministic bytes") {
  ExperimentConfig cfg;
  cfg.n_values = {512};
  cfg.seeds = {4};
  cfg.trials = 500;
  const std::vector<SweepRow> rows = run_sweep(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 512);
  CHECK(rows[0].seed == 4);
  CHECK(rows[0].rule == "uniform");
  CHECK(rows[0].mean_hops > 0.0);
  CHECK(rows[0].lambda_est > 0.0);

  const auto path_a = temp_file("fc_sweep_a.csv");
  const auto path_b = temp_file("fc_sweep_b.csv");
  write_sweep_csv(run_sweep(cfg), path_a.string());
  write_sweep_csv(run_sweep(cfg), path_b.string());
  CHECK(sweep_csv_without_runtime(path_a.string()) ==
        sweep_csv_without_runtime(path_b.string()));
}

TEST_CASE("sweep rows are independent of the job count") {
  ExperimentConfig cfg;
  cfg.n_values = {256, 512};
  cfg.seeds = {1, 2};
  cfg.trials = 300;
  const auto p1 = temp_file("fc_sweep_j1.csv");
  const auto p4 = temp_file("fc_sweep_j4.csv");
  write_sweep_csv(run_sweep(cfg, 1), p1.string());
  write_sweep_csv(run_sweep(cfg, 4), p4.string());
  CHECK(sweep_csv_without_runtime(p1.string()) ==
        sweep_csv_without_runtime(p4.string()));
}

TEST_CASE("sweep csv parses back losslessly") {
  ExperimentConfig cfg;
  cfg.n_values = {512};
  cfg.seeds = {1, 2};
  cfg.trials = 200;
  cfg.rule = DestinationRule::Kind::powerlaw;
  cfg.beta = 1.5;
  const std::vector<SweepRow> rows = run_sweep(cfg);
  const auto path = temp_file("fc_sweep_rt.csv");
  write_sweep_csv(rows, path.string());
  const std::vector<SweepRow> back = read_sweep_csv(path.string());
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].n == rows[i].n);
    CHECK(back[i].seed == rows[i].seed);
    CHECK(back[i].mean_hops == rows[i].mean_hops);
    CHECK(back[i].lambda_est == rows[i].lambda_est);
    CHECK(back[i].beta.value() == rows[i].beta.value());
    CHECK(back[i].rule == rows[i].rule);
  }
}

TEST_CASE("plots: deterministic bytes, slope annotation, errors") {
  std::vector<SweepRow> rows;
  for (int i = 1; i <= 2; ++i) {
    SweepRow r;
    r.n = 1000 * i;
    r.mean_hops = 10.0 * i;
    r.lambda_est = 1.0 / i;
    rows.push_back(r);
  }
  const auto pa = temp_file("fc_plot_a.svg");
  const auto pb = temp_file("fc_plot_b.svg");
  emit_plot(rows, "n", "mean_hops", pa.string());
  emit_plot(rows, "n", "mean_hops", pb.string());
  const std::string bytes = slurp(pa.string());
  CHECK(bytes == slurp(pb.string()));
  CHECK(bytes.find("slope 1") != std::string::npos);  // doubling n doubles hops
  CHECK(bytes.find("<svg") != std::string::npos);

  CHECK_THROWS_AS(emit_plot({}, "n", "mean_hops", pa.string()),
                  std::invalid_argument);
  CHECK_THROWS_AS(emit_plot(rows, "n", "no_such_column", pa.string()),
                  std::invalid_argument);
  SweepRow zero;
  zero.n = 10;
  zero.mean_hops = 0.0;
  CHECK_THROWS_AS(emit_plot({zero}, "n", "mean_hops", pa.string()),
                  std::invalid_argument);
}
