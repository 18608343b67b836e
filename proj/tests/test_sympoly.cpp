#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fractalcap/logspace.hpp"
#include "fractalcap/rng.hpp"
#include "fractalcap/sympoly.hpp"
#include "oracles.hpp"

using namespace fractalcap;

namespace {

std::vector<double> random_weights(int n, Rng& rng, double lo = 0.1,
                                   double hi = 10.0) {
  std::vector<double> w(n);
  for (double& x : w) x = lo + rng.uniform01() * (hi - lo);
  return w;
}

}  // namespace

TEST_CASE("sigma of order 1 is the weight sum") {
  const std::vector<double> w = {2.0, 5.0, 7.5};
  const SymPolyTable t = SymPolyTable::build(w, 1);
  CHECK(t.sigma(1, 3) == doctest::Approx(14.5).epsilon(1e-12));
}

TEST_CASE("pair sums match enumeration on (1,2,3)") {
  const std::vector<double> w = {1.0, 2.0, 3.0};
  const SymPolyTable t = SymPolyTable::build(w, 2);
  CHECK(t.sigma(2, 3) == doctest::Approx(11.0).epsilon(1e-12));
}

TEST_CASE("equal weights reduce to binomial counts") {
  const std::vector<double> w(10, 1.0);
  const SymPolyTable t = SymPolyTable::build(w, 4);
  CHECK(t.sigma(4, 10) == doctest::Approx(210.0).epsilon(1e-12));
}

TEST_CASE("table invariants: base row, zero region, recurrence") {
  Rng rng(91);
  const std::vector<double> w = random_weights(9, rng);
  const SymPolyTable t = SymPolyTable::build(w, 6);
  for (int j = 0; j <= 9; ++j) CHECK(t.log_sigma(0, j) == 0.0);
  for (int p = 1; p <= 6; ++p) {
    for (int j = 0; j < p; ++j) CHECK(t.log_sigma(p, j) == kLogZero);
  }
  for (int p = 1; p <= 6; ++p) {
    for (int j = p; j <= 9; ++j) {
      const double lhs = t.sigma(p, j);
      const double rhs = t.sigma(p, j - 1) + w[j - 1] * t.sigma(p - 1, j - 1);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      CHECK(lhs > 0.0);
    }
  }
}

TEST_CASE("build rejects bad inputs") {
  CHECK_THROWS_AS(SymPolyTable::build(std::vector<double>{1.0, -2.0}, 1),
                  std::domain_error);
  CHECK_THROWS_AS(SymPolyTable::build(std::vector<double>{1.0, 0.0}, 1),
                  std::domain_error);
  CHECK_THROWS_AS(SymPolyTable::build(std::vector<double>{1.0, 2.0}, 3),
                  std::domain_error);
  CHECK_THROWS_AS(SymPolyTable::build(std::vector<double>{}, 1),
                  std::domain_error);
}

TEST_CASE("full table matches enumeration for random instances") {
  Rng rng(17);
  for (int n = 2; n <= 12; ++n) {
    const std::vector<double> w = random_weights(n, rng);
    const SymPolyTable t = SymPolyTable::build(w, n);
    for (int p = 1; p <= n; ++p) {
      const double expect = oracles::sigma_enumerated(w, p);
      CHECK(t.sigma(p, n) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("excluded sigma: small pinned cases") {
  {
    const std::vector<double> w = {1.0, 2.0, 3.0};
    const SymPolyTable t = SymPolyTable::build(w, 2);
    CHECK(std::exp(excluded_log_sigma(t, 3, 1)) ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::exp(excluded_log_sigma(t, 2, 2)) ==
          doctest::Approx(3.0).epsilon(1e-12));
  }
  {
    const std::vector<double> w = {4.0, 1.0, 1.0};
    const SymPolyTable t = SymPolyTable::build(w, 1);
    CHECK(std::exp(excluded_log_sigma(t, 1, 1)) ==
          doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("excluded sigma matches enumeration and the downdate agrees") {
  Rng rng(23);
  for (int n = 2; n <= 12; ++n) {
    const std::vector<double> w = random_weights(n, rng);
    const SymPolyTable t = SymPolyTable::build(w, n);
    for (int k = 1; k <= n; ++k) {
      const std::vector<double> rest = oracles::without_index(w, k);
      for (int p = 0; p <= n - 1; ++p) {
        const double expect = oracles::sigma_enumerated(rest, p);
        const double rebuilt = std::exp(excluded_log_sigma(t, k, p));
        CHECK(rebuilt == doctest::Approx(expect).epsilon(1e-9));
        const double downdated = std::exp(excluded_log_sigma_downdate(t, k, p));
        CHECK(downdated == doctest::Approx(rebuilt).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("excluded sigma rejects out-of-range indices") {
  const std::vector<double> w = {1.0, 2.0, 3.0};
  const SymPolyTable t = SymPolyTable::build(w, 2);
  CHECK_THROWS_AS(excluded_log_sigma(t, 0, 1), std::domain_error);
  CHECK_THROWS_AS(excluded_log_sigma(t, 4, 1), std::domain_error);
  CHECK_THROWS_AS(excluded_log_sigma(t, 1, 3), std::domain_error);
}

TEST_CASE("contact probability: pinned cases") {
  const std::vector<double> equal = {1.0, 1.0, 1.0};
  for (int k = 1; k <= 3; ++k) {
    CHECK(contact_probability(equal, 2, k) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  const std::vector<double> skew = {4.0, 1.0, 1.0};
  CHECK(contact_probability(skew, 2, 1) ==
        doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(contact_probability(skew, 2, 2) ==
        doctest::Approx(5.0 / 9.0).epsilon(1e-12));
  const std::vector<double> one = {0.37};
  CHECK(contact_probability(one, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(contact_probability(skew, 4, 1), std::domain_error);
}

TEST_CASE("contact probabilities sum to the selection count") {
  Rng rng(31);
  for (int n = 2; n <= 12; ++n) {
    const std::vector<double> w = random_weights(n, rng);
    for (int q = 1; q <= n; ++q) {
      double sum = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p = contact_probability(w, q, k);
        CHECK(p > 0.0);
        CHECK(p <= 1.0 + 1e-12);
        sum += p;
      }
      CHECK(sum == doctest::Approx(static_cast<double>(q)).epsilon(1e-9));
    }
  }
}

TEST_CASE("contact probability matches enumeration") {
  Rng rng(41);
  for (int n = 2; n <= 10; ++n) {
    const std::vector<double> w = random_weights(n, rng);
    for (int q = 1; q <= n; ++q) {
      for (int k = 1; k <= n; ++k) {
        const double expect =
            w[k - 1] *
            oracles::sigma_enumerated(oracles::without_index(w, k), q - 1) /
            oracles::sigma_enumerated(w, q);
        CHECK(contact_probability(w, q, k) ==
              doctest::Approx(expect).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("sigma ratio: equal weights give N/(N-q)") {
  for (int n = 2; n <= 20; ++n) {
    const std::vector<double> w(n, 3.7);
    for (int q = 1; q <= n - 1; ++q) {
      CHECK(sigma_ratio(w, q) ==
            doctest::Approx(static_cast<double>(n) / (n - q)).epsilon(1e-12));
    }
  }
  const std::vector<double> two(2, 1.0);
  CHECK(sigma_ratio(two, 1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("sigma ratio matches enumeration for random weights") {
  {
    const std::vector<double> w = {1.0, 2.0, 3.0, 4.0};
    const double expect = 10.0 * 35.0 / (3.0 * 50.0);
    CHECK(sigma_ratio(w, 2) == doctest::Approx(expect).epsilon(1e-12));
  }
  Rng rng(59);
  for (int n = 2; n <= 12; ++n) {
    const std::vector<double> w = random_weights(n, rng);
    for (int q = 1; q <= n - 1; ++q) {
      const double expect = oracles::sigma_enumerated(w, 1) *
                            oracles::sigma_enumerated(w, q) /
                            ((q + 1) * oracles::sigma_enumerated(w, q + 1));
      CHECK(sigma_ratio(w, q) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(sigma_ratio(std::vector<double>{1.0, 2.0}, 2),
                  std::domain_error);
  CHECK_THROWS_AS(sigma_ratio(std::vector<double>{1.0}, 1), std::domain_error);
}

TEST_CASE("excluded sigma sits inside the subtractive sandwich") {
  // sigma_{q-1,N} - w_k sigma_{q-2,N} < sigma^k_{q-1,N-1} < sigma_{q-1,N},
  // strict on both sides once q >= 3 (lower q degenerates to equality).
  Rng rng(67);
  for (int n = 4; n <= 12; ++n) {
    const std::vector<double> w = random_weights(n, rng);
    const SymPolyTable t = SymPolyTable::build(w, n);
    for (int q = 3; q <= n; ++q) {
      for (int k = 1; k <= n; ++k) {
        const double excl = excluded_log_sigma(t, k, q - 1);
        const double upper = t.log_sigma(q - 1, n);
        const double lower = log_sub_exp(
            upper, t.log_weight(k) + t.log_sigma(q - 2, n));
        CHECK(excl < upper);
        CHECK(lower < excl);
      }
    }
  }
}

TEST_CASE("extreme weight spans stay finite in log domain") {
  std::vector<double> w;
  Rng rng(73);
  for (int i = 0; i < 12; ++i) {
    const double mag = -150.0 + 300.0 * rng.uniform01();
    w.push_back(std::pow(10.0, mag));
  }
  const SymPolyTable t = SymPolyTable::build(w, 12);
  for (int p = 1; p <= 12; ++p) {
    CHECK(std::isfinite(t.log_sigma(p, 12)));
  }
  for (int q = 1; q <= 12; ++q) {
    double sum = 0.0;
    for (int k = 1; k <= 12; ++k) {
      const double p = contact_probability(w, q, k);
      CHECK(std::isfinite(p));
      sum += p;
    }
    CHECK(sum == doctest::Approx(static_cast<double>(q)).epsilon(1e-9));
  }
}
