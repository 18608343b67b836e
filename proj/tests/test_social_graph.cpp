#include <stdexcept>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fractalcap/graph.hpp"
#include "fractalcap/powerlaw.hpp"
#include "fractalcap/social_graph.hpp"

using namespace fractalcap;

TEST_CASE("degrees (2,1,1) build the star, the only possible outcome") {
  const SocialGraph g = build_graph({2, 1, 1}, 3.0, 5);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(1, 2));
  CHECK(g.shortfall == 0);
  validate_graph(g);
}

TEST_CASE("all degrees 1: selections chain down the tie-break order") {
  const SocialGraph g = build_graph(std::vector<int>(40, 1), 2.5, 9);
  CHECK(g.edge_count() <= 39);
  CHECK(g.edge_count() >= 1);
  validate_graph(g);
}

TEST_CASE("creation records always point down the rank order") {
  const SocialGraph g = generate_social_graph(3000, 2.5, 2.5,
                                              KmaxRule::sqrt_n, 101);
  CHECK(!g.creation_log.empty());
  for (const EdgeRecord& rec : g.creation_log) {
    CHECK(rank_less(g.intended_degree, rec.target, rec.selector));
  }
  validate_graph(g);
}

TEST_CASE("construction is a pure function of (degrees, epsilon, seed)") {
  const auto degrees = sample_degrees(5000, 2.5, 70, 3);
  const SocialGraph a = build_graph(degrees, 2.5, 77);
  const SocialGraph b = build_graph(degrees, 2.5, 77);
  CHECK(a.adj == b.adj);
  const SocialGraph c = build_graph(degrees, 2.5, 78);
  CHECK(a.adj != c.adj);
}

TEST_CASE("selection weights drive first-pick frequencies") {
  // Frozen pool of 4 candidates; first pick should follow w_j / sum(w).
  const std::vector<double> weights = {8.0, 4.0, 2.0, 1.0};
  const double total = 15.0;
  const int trials = 100000;
  std::vector<long> hits(4, 0);
  Rng rng(13);
  for (int t = 0; t < trials; ++t) {
    WeightedSampler sampler(weights);
    hits[sampler.draw(rng)] += 1;
  }
  for (int j = 0; j < 4; ++j) {
    const double p = weights[j] / total;
    const double sigma = std::sqrt(p * (1.0 - p) / trials);
    CHECK(std::abs(static_cast<double>(hits[j]) / trials - p) < 3.0 * sigma);
  }
}

TEST_CASE("weighted sampler removes drawn indices and restores on demand") {
  const std::vector<double> weights = {1.0, 2.0, 3.0};
  WeightedSampler sampler(weights);
  Rng rng(1);
  const std::size_t first = sampler.draw(rng);
  CHECK_FALSE(sampler.present(first));
  const std::size_t second = sampler.draw(rng);
  CHECK(second != first);
  const std::size_t third = sampler.draw(rng);
  CHECK(third != first);
  CHECK(third != second);
  CHECK_THROWS_AS(sampler.draw(rng), std::runtime_error);
  sampler.restore(first);
  CHECK(sampler.draw(rng) == first);
}

TEST_CASE("hub repulsion: realized assortativity is negative") {
  int negative = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SocialGraph g =
        generate_social_graph(10000, 2.5, 3.0, KmaxRule::sqrt_n, seed);
    const EdgeDegreeStats stats = edge_degree_stats(g);
    REQUIRE(stats.assortativity.has_value());
    if (*stats.assortativity < 0.0) ++negative;
  }
  CHECK(negative >= 9);
}

TEST_CASE("repulsion holds across the correlation exponent range") {
  // The Pearson sign is the robust signature here; its magnitude is nearly
  // flat in epsilon because selection pools are dominated by degree-1 nodes
  // at any epsilon > 2.
  for (double eps : {2.2, 3.5}) {
    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const SocialGraph g =
          generate_social_graph(8000, 2.5, eps, KmaxRule::sqrt_n, seed);
      mean += edge_degree_stats(g).assortativity.value();
    }
    CHECK(mean / 10.0 < -0.05);
  }
}

TEST_CASE("path of three has assortativity -1") {
  const SocialGraph g = graph_from_adjacency(make_path(3));
  const EdgeDegreeStats stats = edge_degree_stats(g);
  REQUIRE(stats.assortativity.has_value());
  CHECK(*stats.assortativity == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("regular ring reports correlation as undefined") {
  const SocialGraph g = graph_from_adjacency(make_cycle(8));
  const EdgeDegreeStats stats = edge_degree_stats(g);
  CHECK_FALSE(stats.assortativity.has_value());
}

TEST_CASE("joint histogram stores (max, min) endpoint degrees") {
  const SocialGraph g = graph_from_adjacency(make_star(5));
  const EdgeDegreeStats stats = edge_degree_stats(g);
  REQUIRE(stats.joint_histogram.size() == 1);
  CHECK(stats.joint_histogram.begin()->first == std::pair<int, int>{4, 1});
  CHECK(stats.joint_histogram.begin()->second == 4);
}

TEST_CASE("degree fit recovers a synthetic exponent") {
  // Histogram proportional to k^-2.5 over a wide support.
  std::vector<long long> counts;
  for (int k = 1; k <= 256; ++k) {
    counts.push_back(
        static_cast<long long>(1e9 * std::pow(static_cast<double>(k), -2.5)));
  }
  const PowerFit fit = fit_powerlaw_histogram(counts);
  CHECK(fit.exponent == doctest::Approx(2.5).epsilon(0.02));
  CHECK(fit.r2 > 0.999);
}

TEST_CASE("degree fit rejects a single-degree graph") {
  const SocialGraph g = graph_from_adjacency(make_cycle(16));
  CHECK_THROWS_AS(realized_degree_fit(g), std::domain_error);
}

TEST_CASE("generated graphs recover the degree exponent loosely") {
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SocialGraph g =
        generate_social_graph(100000, 2.5, 2.5, KmaxRule::sqrt_n, seed);
    total += realized_degree_fit(g).gamma_hat;
  }
  CHECK(total / 10.0 == doctest::Approx(2.5).epsilon(0.3 / 2.5));
}

TEST_CASE("edge list round-trips bit-exactly") {
  const SocialGraph g =
      generate_social_graph(500, 2.5, 2.5, KmaxRule::sqrt_n, 3);
  std::ostringstream first;
  write_edge_list(g, first);
  std::istringstream back(first.str());
  const SocialGraph parsed = read_edge_list(back);
  CHECK(parsed.n == g.n);
  CHECK(parsed.adj == g.adj);
  CHECK(parsed.gamma == g.gamma);
  CHECK(parsed.epsilon == g.epsilon);
  CHECK(parsed.seed == g.seed);
  std::ostringstream second;
  write_edge_list(parsed, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("edge list import rejects corrupt headers") {
  std::istringstream bad("# something-else v1 n=3\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad), std::runtime_error);
  std::istringstream worse("");
  CHECK_THROWS_AS(read_edge_list(worse), std::runtime_error);
}
