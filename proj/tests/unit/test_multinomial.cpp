#include <cmath>
#include <cstdlib>
#include <random>
#include <set>

#include "doctest.h"
#include "mvc/multinomial.hpp"
#include "support.hpp"

using namespace mvc;
using mvc::testing::random_outcome;
using mvc::testing::random_point;

TEST_CASE("CountVector validates its invariants") {
  CountVector r({1, 6, 1});
  CHECK(r.n() == 8);
  CHECK(r.k() == 3);
  CHECK_THROWS_AS(CountVector({5}), Error);
  CHECK_THROWS_AS(CountVector({1, -1, 2}), Error);
  CHECK_THROWS_AS(CountVector({0, 0}), Error);
  try {
    CountVector({3});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDimension);
  }
}

TEST_CASE("SimplexPoint validates its invariants") {
  CHECK_NOTHROW(SimplexPoint({0.5, 0.5, 0.0}));
  CHECK_THROWS_AS(SimplexPoint({0.5, 0.6}), Error);
  CHECK_THROWS_AS(SimplexPoint({1.2, -0.2}), Error);
}

TEST_CASE("outcome enumeration sizes") {
  CHECK(outcome_count(8, 3) == 45);
  CHECK(outcome_count(5, 4) == 56);
  CHECK(outcome_count(1, 2) == 2);
  const auto t = enumerate_outcomes(1, 2);
  REQUIRE(t.size() == 2);
  CHECK(t.counts(0)[0] + t.counts(1)[0] == 1);
  CHECK(enumerate_outcomes(8, 3).size() == 45);
  CHECK(enumerate_outcomes(5, 4).size() == 56);
}

TEST_CASE("enumeration is distinct and exhaustive with correct log kappa") {
  const auto t = enumerate_outcomes(6, 4);
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto c = t.counts(i);
    std::vector<int> v(c.begin(), c.end());
    CHECK(std::accumulate(v.begin(), v.end(), 0) == 6);
    seen.insert(v);
    double lk = std::lgamma(7.0);
    for (int x : v) lk -= std::lgamma(x + 1.0);
    CHECK(t.log_kappa(i) == doctest::Approx(lk).epsilon(1e-14));
    CHECK(t.index_of(CountVector(v)) == i);
  }
  CHECK(seen.size() == t.size());
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(enumerate_outcomes(8, 3, 10), Error);
  try {
    enumerate_outcomes(60, 8, 1000);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  ::setenv("MVC_MAX_OUTCOMES", "40", 1);
  CHECK(outcome_budget() == 40);
  CHECK_THROWS_AS(enumerate_outcomes(8, 3), Error);
  ::unsetenv("MVC_MAX_OUTCOMES");
  CHECK(outcome_budget() == OutcomeTable::kDefaultBudget);
  CHECK_NOTHROW(enumerate_outcomes(8, 3));
}

TEST_CASE("log_kappa hand values") {
  CHECK(log_kappa(CountVector({1, 6, 1})) == doctest::Approx(std::log(56.0)));
  CHECK(log_kappa(CountVector({1, 6, 1})) == doctest::Approx(4.02535).epsilon(1e-5));
  CHECK(log_kappa(CountVector({5, 0, 0})) == doctest::Approx(0.0));
  CHECK(log_kappa(CountVector({2, 2, 1})) == doctest::Approx(3.40120).epsilon(1e-5));
}

TEST_CASE("log_prob hand values") {
  CHECK(log_prob(CountVector({1, 1}), SimplexPoint({0.5, 0.5})) ==
        doctest::Approx(-0.69315).epsilon(1e-5));
  CHECK(std::isinf(log_prob(CountVector({2, 2, 1}), SimplexPoint({0.5, 0.5, 0.0}))));
  CHECK(log_prob(CountVector({2, 2, 1}), SimplexPoint({0.5, 0.5, 0.0})) < 0);
  CHECK(log_prob(CountVector({4, 0, 0}), SimplexPoint({1.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("exact_p_value hand values") {
  const auto t2 = enumerate_outcomes(2, 2);
  CHECK(exact_p_value(CountVector({1, 1}), SimplexPoint({0.5, 0.5}), t2) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(exact_p_value(CountVector({2, 0}), SimplexPoint({0.5, 0.5}), t2) ==
        doctest::Approx(0.5).epsilon(1e-15));
  const auto t5 = enumerate_outcomes(5, 3);
  CHECK(exact_p_value(CountVector({2, 2, 1}), SimplexPoint({0.5, 0.5, 0.0}), t5) == 0.0);
}

TEST_CASE("probabilities sum to one and p-values are bounded") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const std::size_t k = 2 + rng() % 3;
    const auto t = enumerate_outcomes(n, k);
    const auto p = random_point(k, rng);
    const auto lps = t.log_probs(p);
    double sum = 0.0;
    for (double lp : lps) sum += std::exp(lp);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    const auto r = random_outcome(n, k, rng);
    const double rho = exact_p_value(r, p, t);
    CHECK(rho >= 0.0);
    CHECK(rho <= 1.0);
    CHECK(rho >= std::exp(log_prob(r, p)) * (1 - 1e-12));
  }
}

TEST_CASE("tail bound rho <= m P") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const std::size_t k = 2 + rng() % 3;
    const auto t = enumerate_outcomes(n, k);
    const auto p = random_point(k, rng);
    const auto r = random_outcome(n, k, rng);
    const double rho = exact_p_value(r, p, t);
    CHECK(rho <= static_cast<double>(t.size()) * std::exp(log_prob(r, p)) * (1 + 1e-12));
  }
}

TEST_CASE("zero exclusion") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const std::size_t k = 3;
    const auto r = random_outcome(n, k, rng);
    std::size_t zero = rng() % k;
    while (r[zero] == 0) zero = (zero + 1) % k;
    std::vector<double> p(k);
    const auto q = random_point(k - 1, rng);
    for (std::size_t i = 0, j = 0; i < k; ++i) p[i] = i == zero ? 0.0 : q[j++];
    CHECK(exact_p_value(r, SimplexPoint(p), enumerate_outcomes(n, k)) == 0.0);
  }
}

TEST_CASE("permutation equivariance") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const std::size_t k = 3 + rng() % 2;
    const auto r = random_outcome(n, k, rng);
    const auto p = random_point(k, rng);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> rc(k);
    std::vector<double> pc(k);
    for (std::size_t i = 0; i < k; ++i) {
      rc[i] = r[perm[i]];
      pc[i] = p[perm[i]];
    }
    const auto t = enumerate_outcomes(n, k);
    CHECK(exact_p_value(CountVector(rc), SimplexPoint(pc), t) ==
          doctest::Approx(exact_p_value(r, p, t)).epsilon(1e-12));
  }
}

TEST_CASE("oracle examples") {
  CHECK(oracle_max_min_pvalue(CountVector({1, 1}), CountVector({1, 1}), 100).value >= 0.99);
  const auto fig1 = oracle_max_min_pvalue(CountVector({1, 6, 1}), CountVector({2, 1, 5}), 200);
  CHECK(fig1.value >= 0.17);
  CHECK(oracle_max_min_pvalue(CountVector({8, 0, 0}), CountVector({0, 0, 8}), 400).value < 0.17);
  // The reported maximizer reproduces the reported value.
  const auto t = enumerate_outcomes(8, 3);
  CHECK(std::min(exact_p_value(CountVector({1, 6, 1}), fig1.argmax, t),
                 exact_p_value(CountVector({2, 1, 5}), fig1.argmax, t)) ==
        doctest::Approx(fig1.value).epsilon(1e-12));
  CHECK_THROWS_AS(oracle_max_min_pvalue(CountVector({1, 1}), CountVector({1, 1, 0}), 10), Error);
}

TEST_CASE("compositions are visited once each") {
  int visits = 0;
  std::set<std::vector<int>> seen;
  for_each_composition(5, 3, [&](std::span<const int> c) {
    ++visits;
    seen.insert(std::vector<int>(c.begin(), c.end()));
  });
  CHECK(visits == 21);
  CHECK(seen.size() == 21);
  CHECK(grid_point_count(5, 3) == 21);
}
