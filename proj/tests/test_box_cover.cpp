#include <stdexcept>

#include "doctest.h"
#include "fractalcap/box_cover.hpp"
#include "fractalcap/graph.hpp"

using namespace fractalcap;

TEST_CASE("complete graph collapses into one box at l_B=1") {
  const AdjList k5 = make_complete(5);
  const BoxCovering cov = cover_greedy(k5, 1, 3);
  CHECK(cov.box_count() == 1);
  validate_covering(k5, cov);
}

TEST_CASE("path of 9: greedy matches the exact counts") {
  const AdjList path = make_path(9);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    CHECK(cover_greedy(path, 2, seed).box_count() == 3);
    CHECK(cover_greedy(path, 1, seed).box_count() == 5);
  }
  CHECK(cover_exact(path, 2).box_count() == 3);
  CHECK(cover_exact(path, 1).box_count() == 5);
}

TEST_CASE("exact covering trivia: singleton and triangle") {
  const AdjList one(1);
  CHECK(cover_exact(one, 1).box_count() == 1);
  CHECK(cover_exact(one, 3).box_count() == 1);
  const AdjList tri = make_cycle(3);
  CHECK(cover_exact(tri, 1).box_count() == 1);
}

TEST_CASE("exact covering refuses large instances") {
  const AdjList path = make_path(17);
  CHECK_THROWS_AS(cover_exact(path, 2), std::runtime_error);
}

TEST_CASE("greedy coverings are valid partitions at every size") {
  const AdjList g = make_random_graph(40, 0.08, 5);
  for (int lb : {1, 2, 3, 5}) {
    const BoxCovering cov = cover_greedy(g, lb, 11);
    validate_covering(g, cov);
  }
}

TEST_CASE("greedy covering is deterministic per seed") {
  const AdjList g = make_random_graph(60, 0.06, 9);
  const BoxCovering a = cover_greedy(g, 2, 4);
  const BoxCovering b = cover_greedy(g, 2, 4);
  CHECK(a.box_of == b.box_of);
}

TEST_CASE("box count never increases with the box size") {
  for (std::uint64_t gs = 1; gs <= 6; ++gs) {
    const AdjList g = make_random_graph(30, 0.1, gs);
    int prev = 1 << 30;
    for (int lb : {1, 2, 3, 4, 6}) {
      const int nb = cover_greedy(g, lb, 17).box_count();
      CHECK(nb <= prev);
      prev = nb;
    }
  }
  const AdjList path = make_path(50);
  int prev = 1 << 30;
  for (int lb : {1, 2, 3, 4, 6, 9}) {
    const int nb = cover_greedy(path, lb, 23).box_count();
    CHECK(nb <= prev);
    prev = nb;
  }
}

namespace {

std::vector<AdjList> small_corpus() {
  std::vector<AdjList> corpus;
  for (int n = 2; n <= 12; ++n) corpus.push_back(make_path(n));
  for (int n = 3; n <= 12; ++n) corpus.push_back(make_cycle(n));
  for (int n = 4; n <= 12; ++n) corpus.push_back(make_star(n));
  for (int n = 2; n <= 8; ++n) corpus.push_back(make_complete(n));
  corpus.push_back(make_spider(3, 2));
  corpus.push_back(make_spider(4, 2));
  corpus.push_back(make_spider(3, 3));
  corpus.push_back(make_double_star(3, 2));
  corpus.push_back(make_double_star(4, 4));
  corpus.push_back(make_double_star(5, 5));
  return corpus;
}

}  // namespace

TEST_CASE("greedy stays within 1.25x of minimal on the small corpus") {
  for (const AdjList& g : small_corpus()) {
    for (int lb : {1, 2, 3}) {
      const int exact = cover_exact(g, lb).box_count();
      for (std::uint64_t seed : {3ULL, 7ULL, 11ULL}) {
        const int greedy = cover_greedy(g, lb, seed).box_count();
        CHECK(greedy >= exact);
        CHECK(static_cast<double>(greedy) <= 1.25 * exact);
      }
    }
  }
}

TEST_CASE("strict convention shrinks the diameter budget") {
  const AdjList path = make_path(9);
  // strict "< l_B" at l_B=2 means diameter <= 1, i.e. the l_B=1 inclusive case
  CHECK(cover_exact(path, 2, true).box_count() == 5);
  const BoxCovering cov = cover_greedy(path, 2, 3, true);
  validate_covering(path, cov);
  CHECK(cov.box_count() == 5);
}

TEST_CASE("renormalization: path contracts to a path, cliques to points") {
  const AdjList path = make_path(9);
  BoxCovering cov;
  cov.l_b = 2;
  cov.box_of = {0, 0, 0, 1, 1, 1, 2, 2, 2};
  cov.boxes = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  const AdjList q = renormalize(path, cov);
  REQUIRE(q.size() == 3);
  CHECK(q[0] == std::vector<NodeId>{1});
  CHECK(q[1] == (std::vector<NodeId>{0, 2}));
  CHECK(q[2] == std::vector<NodeId>{1});

  const AdjList k5 = make_complete(5);
  const BoxCovering whole = cover_greedy(k5, 1, 1);
  const AdjList point = renormalize(k5, whole);
  REQUIRE(point.size() == 1);
  CHECK(point[0].empty());

  // two disjoint edges, each its own box: two isolated nodes
  AdjList pairs(4);
  pairs[0] = {1};
  pairs[1] = {0};
  pairs[2] = {3};
  pairs[3] = {2};
  BoxCovering two;
  two.l_b = 1;
  two.box_of = {0, 0, 1, 1};
  two.boxes = {{0, 1}, {2, 3}};
  const AdjList iso = renormalize(pairs, two);
  REQUIRE(iso.size() == 2);
  CHECK(iso[0].empty());
  CHECK(iso[1].empty());
}

TEST_CASE("renormalized node count equals the box count") {
  const AdjList g = make_random_graph(30, 0.12, 2);
  const BoxCovering cov = cover_greedy(g, 2, 5);
  const AdjList q = renormalize(g, cov);
  CHECK(static_cast<int>(q.size()) == cov.box_count());
  for (std::size_t b = 0; b < q.size(); ++b) {
    for (std::size_t i = 1; i < q[b].size(); ++i) {
      CHECK(q[b][i] > q[b][i - 1]);  // sorted, no duplicates
    }
  }
}

TEST_CASE("box stats: star inside one box has no external links") {
  const AdjList star = make_star(7);
  BoxCovering cov;
  cov.l_b = 2;
  cov.box_of.assign(7, 0);
  cov.boxes = {{0, 1, 2, 3, 4, 5, 6}};
  const std::vector<BoxStats> stats = box_stats(star, cov);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].k_b == 0);
  CHECK(stats[0].n_h == 0);
  CHECK(stats[0].k_hub == 6);
  CHECK(stats[0].hub == 0);
}

TEST_CASE("box stats: middle box of a covered path") {
  const AdjList path = make_path(9);
  BoxCovering cov;
  cov.l_b = 2;
  cov.box_of = {0, 0, 0, 1, 1, 1, 2, 2, 2};
  cov.boxes = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  const std::vector<BoxStats> stats = box_stats(path, cov);
  CHECK(stats[1].k_b == 2);
  CHECK(stats[1].k_hub == 2);
  CHECK(stats[1].hub == 3);  // lowest id among max-degree members
  CHECK(stats[1].n_h == 1);  // edge (3,2) leaves the box
  CHECK(stats[1].n_h >= 0);
  CHECK(stats[1].n_h <= 2);
}

TEST_CASE("fractal fit on a long path recovers dimension 1") {
  const AdjList path = make_path(1024);
  const FractalFit fit = fit_fractal_exponents(path, {1, 3, 7, 15}, 5);
  CHECK(fit.d_b == doctest::Approx(1.0).epsilon(0.05));
  CHECK(fit.r2_db > 0.99);
}

TEST_CASE("single-box coverings reject the fit") {
  const AdjList k8 = make_complete(8);
  const FractalFit fit = fit_fractal_exponents(k8, {1, 2, 3}, 1);
  // every covering is the whole graph: no external links, zero ratios
  CHECK_FALSE(fit.gamma_hat.has_value());
  CHECK_FALSE(fit.epsilon_hat.has_value());
}

TEST_CASE("fit requires at least three box sizes") {
  const AdjList path = make_path(16);
  CHECK_THROWS_AS(fit_fractal_exponents(path, {1, 2}, 1), std::domain_error);
}
