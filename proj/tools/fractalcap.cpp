// Command-line front end: graph generation, deployment, hop/capacity sweeps,
// box covering, level analysis, verification and plotting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fractalcap/acceptance.hpp"
#include "fractalcap/box_cover.hpp"
#include "fractalcap/deployment.hpp"
#include "fractalcap/graph.hpp"
#include "fractalcap/hierarchy.hpp"
#include "fractalcap/rng.hpp"
#include "fractalcap/social_graph.hpp"
#include "fractalcap/svg_plot.hpp"
#include "fractalcap/sweep.hpp"
#include "fractalcap/traffic.hpp"

#include "json.hpp"

namespace fc = fractalcap;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriteriaFailed = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int jobs = 1;
};

fc::ExperimentConfig load_config(const CommonArgs& args) {
  fc::ExperimentConfig cfg;
  if (!args.config_path.empty()) {
    cfg = fc::ExperimentConfig::from_file(args.config_path);
  }
  if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
  fs::create_directories(cfg.output_dir);
  return cfg;
}

std::string cell_name(const char* stem, long n, std::uint64_t seed,
                      const char* ext) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s_n%ld_s%llu.%s", stem, n,
                static_cast<unsigned long long>(seed), ext);
  return buf;
}

int cmd_generate(const CommonArgs& args) {
  const fc::ExperimentConfig cfg = load_config(args);
  for (long n : cfg.n_values) {
    for (std::uint64_t seed : cfg.seeds) {
      const fc::SocialGraph g = fc::generate_social_graph(
          static_cast<int>(n), cfg.gamma, cfg.epsilon, cfg.kmax_rule,
          fc::derive_seed(seed, 1));
      const fs::path path =
          fs::path(cfg.output_dir) / cell_name("graph", n, seed, "txt");
      fc::write_edge_list(g, path.string());
      std::printf("%s  edges=%lld shortfall=%lld\n", path.c_str(),
                  g.edge_count(), g.shortfall);
    }
  }
  return kExitOk;
}

int cmd_deploy(const CommonArgs& args) {
  const fc::ExperimentConfig cfg = load_config(args);
  for (long n : cfg.n_values) {
    for (std::uint64_t seed : cfg.seeds) {
      const fc::Deployment dep =
          fc::deploy(static_cast<int>(n), cfg.c0, cfg.c1, cfg.delta,
                     fc::derive_seed(seed, 2));
      const fs::path path =
          fs::path(cfg.output_dir) / cell_name("deploy", n, seed, "csv");
      fc::write_deployment_csv(dep, path.string());
      std::printf("%s  cells=%lld T=%d empty=%.4f\n", path.c_str(),
                  dep.cells(), dep.tdma, fc::occupancy_report(dep));
    }
  }
  return kExitOk;
}

int cmd_hops(const CommonArgs& args) {
  const fc::ExperimentConfig cfg = load_config(args);
  const std::vector<fc::SweepRow> rows = fc::run_sweep(cfg, args.jobs);
  for (const fc::SweepRow& row : rows) {
    std::printf("n=%ld seed=%llu rule=%s E[X]=%.4f +- %.4f lambda=%.4e\n",
                row.n, static_cast<unsigned long long>(row.seed),
                row.rule.c_str(), row.mean_hops, row.stderr_hops,
                row.lambda_est);
  }
  const fs::path path = fs::path(cfg.output_dir) / "hops.csv";
  fc::write_sweep_csv(rows, path.string());
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
  const fc::ExperimentConfig cfg = load_config(args);
  const std::vector<fc::SweepRow> rows = fc::run_sweep(cfg, args.jobs);
  const fs::path path = fs::path(cfg.output_dir) / "sweep.csv";
  fc::write_sweep_csv(rows, path.string());
  std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
  return kExitOk;
}

int cmd_boxcover(const CommonArgs& args, const std::vector<int>& lb_grid) {
  const fc::ExperimentConfig cfg = load_config(args);
  for (long n : cfg.n_values) {
    for (std::uint64_t seed : cfg.seeds) {
      const fc::SocialGraph g = fc::generate_social_graph(
          static_cast<int>(n), cfg.gamma, cfg.epsilon, cfg.kmax_rule,
          fc::derive_seed(seed, 1));
      for (int lb : lb_grid) {
        const fc::BoxCovering cov = fc::cover_greedy(g.adj, lb, seed);
        char stem[64];
        std::snprintf(stem, sizeof(stem), "cover_lb%d", lb);
        const fs::path path =
            fs::path(cfg.output_dir) / cell_name(stem, n, seed, "csv");
        fc::write_covering_csv(cov, path.string());
      }
      const fc::FractalFit fit =
          fc::fit_fractal_exponents(g.adj, lb_grid, seed);
      const fs::path path =
          fs::path(cfg.output_dir) / cell_name("fit", n, seed, "json");
      fc::write_fit_json(fit, path.string());
      std::printf("%s  dB=%.3f dg=%.3f de=%.3f gamma_hat=%s epsilon_hat=%s\n",
                  path.c_str(), fit.d_b, fit.d_g, fit.d_e,
                  fit.gamma_hat ? std::to_string(*fit.gamma_hat).c_str() : "-",
                  fit.epsilon_hat ? std::to_string(*fit.epsilon_hat).c_str()
                                  : "-");
    }
  }
  return kExitOk;
}

int cmd_hierarchy(const CommonArgs& args, int levels) {
  const fc::ExperimentConfig cfg = load_config(args);
  for (long n : cfg.n_values) {
    for (std::uint64_t seed : cfg.seeds) {
      const fc::SocialGraph g = fc::generate_social_graph(
          static_cast<int>(n), cfg.gamma, cfg.epsilon, cfg.kmax_rule,
          fc::derive_seed(seed, 1));
      const fc::LevelProfile profile = fc::level_degree_profile(g, levels);
      const fs::path path =
          fs::path(cfg.output_dir) / cell_name("levels", n, seed, "csv");
      fc::write_level_profile_csv(profile, path.string());

      nlohmann::ordered_json j;
      j["n"] = n;
      j["seed"] = seed;
      j["gamma"] = cfg.gamma;
      j["epsilon"] = cfg.epsilon;
      j["extendibility"] = fc::to_string(fc::extendibility_class(cfg.epsilon));
      j["mean_level_degree"] = profile.mean_level_degree;
      j["coverage"] = profile.coverage;
      nlohmann::ordered_json analytic = nlohmann::ordered_json::array();
      for (int level = 1; level <= levels; ++level) {
        analytic.push_back(
            fc::analytic_level_degree(cfg.gamma, cfg.epsilon, level));
      }
      j["analytic_level_degree"] = analytic;
      if (cfg.epsilon <= 3.0) {
        j["max_level"] = fc::max_level(cfg.gamma, cfg.epsilon, n);
        j["hierarchical_hop_factor"] =
            fc::hierarchical_hop_factor(cfg.gamma, cfg.epsilon, n);
      }
      const fs::path jpath =
          fs::path(cfg.output_dir) / cell_name("hierarchy", n, seed, "json");
      std::ofstream out(jpath, std::ios::binary);
      out << j.dump(2) << "\n";
      std::printf("%s\n", jpath.c_str());
    }
  }
  return kExitOk;
}

int cmd_verify(const CommonArgs& args) {
  const fc::ExperimentConfig cfg = load_config(args);
  const auto results = fc::run_acceptance(true);
  const fs::path path = fs::path(cfg.output_dir) / "verify_report.json";
  fc::write_verify_report(results, path.string());
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%-4s %s  measured: %s\n", r.id.c_str(),
                r.pass ? "PASS" : "FAIL", r.measured.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("wrote %s\n", path.c_str());
  return failed == 0 ? kExitOk : kExitCriteriaFailed;
}

int cmd_plot(const CommonArgs& args, const std::string& rows_csv,
             const std::string& x_col, const std::string& y_col,
             const std::string& name) {
  const fc::ExperimentConfig cfg = load_config(args);
  const std::vector<fc::SweepRow> rows = fc::read_sweep_csv(rows_csv);
  const fs::path path = fs::path(cfg.output_dir) / name;
  fc::emit_plot(rows, x_col, y_col, path.string());
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractal D2D social network capacity simulator"};
  app.require_subcommand(1);

  CommonArgs common;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON experiment config");
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_option("--jobs", common.jobs, "parallel (n, seed) cells")
        ->check(CLI::Range(1, 64));
  };

  auto* generate =
      app.add_subcommand("generate", "write social graph edge lists");
  add_common(generate);
  auto* deploy = app.add_subcommand("deploy", "write unit-square deployments");
  add_common(deploy);
  auto* hops = app.add_subcommand("hops", "estimate hop counts per (n, seed)");
  add_common(hops);
  auto* sweep = app.add_subcommand("sweep", "full capacity sweep to CSV");
  add_common(sweep);

  auto* boxcover =
      app.add_subcommand("boxcover", "box coverings and exponent fits");
  add_common(boxcover);
  std::vector<int> lb_grid = {1, 3, 7, 15};
  boxcover->add_option("--lb", lb_grid, "box sizes");

  auto* hierarchy =
      app.add_subcommand("hierarchy", "level profiles and analytics");
  add_common(hierarchy);
  int levels = 8;
  hierarchy->add_option("--levels", levels, "levels to explore")
      ->check(CLI::Range(1, 64));

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify);

  auto* plot = app.add_subcommand("plot", "log-log SVG from sweep rows");
  add_common(plot);
  std::string rows_csv, x_col = "n", y_col = "lambda_est",
                        plot_name = "plot.svg";
  plot->add_option("--rows", rows_csv, "sweep CSV to plot")->required();
  plot->add_option("--x", x_col, "x column");
  plot->add_option("--y", y_col, "y column");
  plot->add_option("--name", plot_name, "output file name");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(common);
    if (deploy->parsed()) return cmd_deploy(common);
    if (hops->parsed()) return cmd_hops(common);
    if (sweep->parsed()) return cmd_sweep(common);
    if (boxcover->parsed()) return cmd_boxcover(common, lb_grid);
    if (hierarchy->parsed()) return cmd_hierarchy(common, levels);
    if (verify->parsed()) return cmd_verify(common);
    if (plot->parsed())
      return cmd_plot(common, rows_csv, x_col, y_col, plot_name);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
