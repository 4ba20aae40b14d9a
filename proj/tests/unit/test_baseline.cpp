#include <cmath>
#include <random>

#include "doctest.h"
#include "mvc/baseline.hpp"
#include "support.hpp"

using namespace mvc;
using namespace mvc::testing;

TEST_CASE("chi-square quantile") {
  CHECK(chisq_quantile(2, 0.83) == doctest::Approx(-2.0 * std::log(0.17)).epsilon(1e-12));
  CHECK(chisq_quantile(2, 1e-12) < 1e-10);
  CHECK(chisq_quantile(1, 0.95) == doctest::Approx(3.8415).epsilon(1e-4));
  CHECK_THROWS_AS(chisq_quantile(0, 0.5), Error);
  CHECK_THROWS_AS(chisq_quantile(2, 1.0), Error);
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = u(rng);
    CHECK(chisq_quantile(2, 1.0 - alpha) ==
          doctest::Approx(-2.0 * std::log(alpha)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("G squared") {
  const CountVector r({2, 3, 3});
  CHECK(g_squared(r, SimplexPoint({0.25, 0.375, 0.375})) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::isinf(g_squared(r, SimplexPoint({0.5, 0.5, 0.0}))));
  CHECK(g_squared(CountVector({4, 0}), SimplexPoint({1.0, 0.0})) == 0.0);
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 200; ++trial)
    CHECK(g_squared(random_outcome(8, 3, rng), random_point(3, rng)) >= -1e-12);
}

TEST_CASE("Wilks membership") {
  const WilksRegion a(CountVector({1, 6, 1}), 0.17);
  CHECK(a.threshold == doctest::Approx(-2.0 * std::log(0.17)).epsilon(1e-12));
  CHECK(wilks_member(a, SimplexPoint({0.125, 0.75, 0.125})));
  CHECK_FALSE(wilks_member(a, SimplexPoint({0.5, 0.5, 0.0})));
  CHECK_FALSE(wilks_member(a, SimplexPoint({2.0 / 8, 1.0 / 8, 5.0 / 8})));
  CHECK_THROWS_AS(WilksRegion(CountVector({1, 1}), 0.0), Error);
}

TEST_CASE("Wilks intersection") {
  CHECK_FALSE(wilks_intersect(CountVector({1, 6, 1}), CountVector({2, 1, 5}), 0.17, 400));
  CHECK(wilks_intersect(CountVector({1, 6, 1}), CountVector({1, 6, 1}), 0.17, 80));
  CHECK_FALSE(wilks_intersect(CountVector({1, 6, 1}), CountVector({2, 1, 5}), 0.999, 100));
  CHECK_THROWS_AS(wilks_intersect(CountVector({1, 1}), CountVector({1, 1, 0}), 0.1, 10), Error);
}

TEST_CASE("Wilks regions are convex") {
  const WilksRegion a(CountVector({1, 6, 1}), 0.17);
  std::mt19937_64 rng(97);
  int pairs = 0;
  while (pairs < 1000) {
    const auto p = random_point(3, rng);
    const auto q = random_point(3, rng);
    if (!wilks_member(a, p) || !wilks_member(a, q)) continue;
    ++pairs;
    const SimplexPoint mid({0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]),
                            1.0 - 0.5 * (p[0] + q[0]) - 0.5 * (p[1] + q[1])});
    CHECK(wilks_member(a, mid));
  }
}
