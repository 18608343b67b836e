#include "fractalcap/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fractalcap {

std::string ExperimentConfig::rule_name() const {
  if (hierarchical) return "hierarchical";
  return rule == DestinationRule::Kind::uniform ? "uniform" : "powerlaw";
}

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw std::invalid_argument("config: n_values must be nonempty");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("config: n_values must be increasing");
    }
  }
  if (n_values.front() < 2) throw std::invalid_argument("config: n must be >= 2");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (!(gamma > 2.0)) throw std::invalid_argument("config: gamma must be > 2");
  if (!(epsilon > 2.0)) throw std::invalid_argument("config: epsilon must be > 2");
  if (beta < 0.0) throw std::invalid_argument("config: beta must be >= 0");
  if (!(c0 > 0.0) || !(c1 > 0.0)) throw std::invalid_argument("config: c0, c1 must be > 0");
  if (delta < 0.0) throw std::invalid_argument("config: delta must be >= 0");
  if (seeds.empty()) throw std::invalid_argument("config: seeds must be nonempty");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: bad JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "n_values") cfg.n_values = value.get<std::vector<long>>();
    else if (key == "gamma") cfg.gamma = value.get<double>();
    else if (key == "epsilon") cfg.epsilon = value.get<double>();
    else if (key == "kmax_rule") {
      const std::string s = value.get<std::string>();
      if (s == "sqrt") cfg.kmax_rule = KmaxRule::sqrt_n;
      else if (s == "full") cfg.kmax_rule = KmaxRule::full;
      else throw std::invalid_argument("config: kmax_rule must be sqrt or full");
    } else if (key == "rule") {
      const std::string s = value.get<std::string>();
      if (s == "uniform") { cfg.rule = DestinationRule::Kind::uniform; cfg.hierarchical = false; }
      else if (s == "powerlaw") { cfg.rule = DestinationRule::Kind::powerlaw; cfg.hierarchical = false; }
      else if (s == "hierarchical") { cfg.hierarchical = true; }
      else throw std::invalid_argument("config: rule must be uniform, powerlaw or hierarchical");
    } else if (key == "beta") cfg.beta = value.get<double>();
    else if (key == "c0") cfg.c0 = value.get<double>();
    else if (key == "c1") cfg.c1 = value.get<double>();
    else if (key == "delta") cfg.delta = value.get<double>();
    else if (key == "trials") cfg.trials = value.get<long>();
    else if (key == "seeds") cfg.seeds = value.get<std::vector<std::uint64_t>>();
    else if (key == "output_dir") cfg.output_dir = value.get<std::string>();
    else throw std::invalid_argument("config: unknown field: " + key);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

namespace {

SweepRow run_cell(const ExperimentConfig& cfg, long n, std::uint64_t seed,
                  const std::string& id) {
  const auto start = std::chrono::steady_clock::now();

  const SocialGraph graph = generate_social_graph(
      static_cast<int>(n), cfg.gamma, cfg.epsilon, cfg.kmax_rule,
      derive_seed(seed, 1));
  const Deployment dep =
      deploy(static_cast<int>(n), cfg.c0, cfg.c1, cfg.delta, derive_seed(seed, 2));

  HopEstimate est;
  const std::uint64_t hop_seed = derive_seed(seed, 3);
  if (cfg.hierarchical) {
    // source draws; each enumerates every reachable target
    const long source_draws = std::max<long>(1, cfg.trials / 25);
    est = estimate_hierarchical_hops(graph, dep, source_draws, hop_seed);
  } else if (cfg.rule == DestinationRule::Kind::powerlaw) {
    est = estimate_mean_hops(graph, dep, DestinationRule::powerlaw(cfg.beta),
                             cfg.trials, hop_seed);
  } else {
    est = estimate_mean_hops(graph, dep, DestinationRule::uniform(),
                             cfg.trials, hop_seed);
  }
  const CapacityEstimate cap = capacity_estimate(est.mean_hops, dep);

  SweepRow row;
  row.experiment_id = id;
  row.n = n;
  row.seed = seed;
  row.gamma = cfg.gamma;
  row.epsilon = cfg.epsilon;
  row.rule = cfg.rule_name();
  if (cfg.rule == DestinationRule::Kind::powerlaw && !cfg.hierarchical) {
    row.beta = cfg.beta;
  }
  row.trials = est.trials;
  row.mean_hops = est.mean_hops;
  row.stderr_hops = est.stderr_hops;
  row.cells = dep.cells();
  row.tdma = dep.tdma;
  row.lambda_est = cap.lambda;
  row.empty_cell_fraction = est.empty_cell_fraction;
  row.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, int jobs) {
  config.validate();
  struct Cell {
    long n;
    std::uint64_t seed;
    std::string id;
  };
  std::vector<Cell> cells;
  int index = 0;
  for (long n : config.n_values) {
    for (std::uint64_t seed : config.seeds) {
      char id[32];
      std::snprintf(id, sizeof(id), "exp%04d", index++);
      cells.push_back(Cell{n, seed, id});
    }
  }

  std::vector<std::optional<SweepRow>> slots(cells.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      try {
        slots[i] = run_cell(config, cells[i].n, cells[i].seed, cells[i].id);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "sweep: cell n=%ld seed=%llu failed: %s\n",
                     cells[i].n,
                     static_cast<unsigned long long>(cells[i].seed), e.what());
      }
    }
  } else {
    std::vector<std::future<void>> running;
    std::size_t cursor = 0;
    while (cursor < cells.size() || !running.empty()) {
      while (cursor < cells.size() &&
             running.size() < static_cast<std::size_t>(jobs)) {
        const std::size_t i = cursor++;
        running.push_back(std::async(std::launch::async, [&, i] {
          try {
            slots[i] = run_cell(config, cells[i].n, cells[i].seed, cells[i].id);
          } catch (const std::exception& e) {
            std::fprintf(stderr, "sweep: cell n=%ld seed=%llu failed: %s\n",
                         cells[i].n,
                         static_cast<unsigned long long>(cells[i].seed),
                         e.what());
          }
        }));
      }
      running.front().wait();
      running.erase(running.begin());
    }
  }

  std::vector<SweepRow> rows;
  for (auto& slot : slots) {
    if (slot) rows.push_back(std::move(*slot));
  }
  return rows;
}

const char* const kSweepCsvHeader =
    "experiment_id,n,seed,gamma,epsilon,rule,beta,trials,mean_hops,"
    "stderr_hops,cells,T,lambda_est,empty_cell_fraction,runtime_ms";

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_sweep_csv: cannot open " + path);
  out << kSweepCsvHeader << "\n";
  char buf[512];
  for (const SweepRow& r : rows) {
    char beta_str[40] = "";
    if (r.beta) std::snprintf(beta_str, sizeof(beta_str), "%.17g", *r.beta);
    std::snprintf(buf, sizeof(buf),
                  "%s,%ld,%llu,%.17g,%.17g,%s,%s,%ld,%.17g,%.17g,%lld,%d,"
                  "%.17g,%.17g,%.17g\n",
                  r.experiment_id.c_str(), r.n,
                  static_cast<unsigned long long>(r.seed), r.gamma, r.epsilon,
                  r.rule.c_str(), beta_str, r.trials, r.mean_hops,
                  r.stderr_hops, r.cells, r.tdma, r.lambda_est,
                  r.empty_cell_fraction, r.runtime_ms);
    out << buf;
  }
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_sweep_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw std::runtime_error("read_sweep_csv: unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() == 14) fields.push_back("");  // trailing empty runtime
    if (fields.size() != 15) {
      throw std::runtime_error("read_sweep_csv: bad row: " + line);
    }
    SweepRow r;
    r.experiment_id = fields[0];
    r.n = std::stol(fields[1]);
    r.seed = std::stoull(fields[2]);
    r.gamma = std::stod(fields[3]);
    r.epsilon = std::stod(fields[4]);
    r.rule = fields[5];
    if (!fields[6].empty()) r.beta = std::stod(fields[6]);
    r.trials = std::stol(fields[7]);
    r.mean_hops = std::stod(fields[8]);
    r.stderr_hops = std::stod(fields[9]);
    r.cells = std::stoll(fields[10]);
    r.tdma = std::stoi(fields[11]);
    r.lambda_est = std::stod(fields[12]);
    r.empty_cell_fraction = std::stod(fields[13]);
    r.runtime_ms = fields[14].empty() ? 0.0 : std::stod(fields[14]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string sweep_csv_without_runtime(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sweep_csv_without_runtime: cannot open " + path);
  std::string out, line;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out.append(line, 0, pos == std::string::npos ? line.size() : pos);
    out.push_back('\n');
  }
  return out;
}

}  // namespace fractalcap
