#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "mvc/domain.hpp"
#include "support.hpp"

using namespace mvc;
using namespace mvc::testing;

namespace {

double log_p_at(const CountVector& r, const std::vector<double>& u) {
  return log_prob(r, from_logodds({u}));
}

}  // namespace

TEST_CASE("superlevel threshold") {
  CHECK(superlevel_threshold(0.17, 0.001, 45) == doctest::Approx(0.0037556).epsilon(1e-4));
  CHECK(superlevel_threshold(0.5, 0.1, 2) == doctest::Approx(0.2));
  CHECK_THROWS_AS(superlevel_threshold(0.17, 0.17, 45), Error);
  CHECK_THROWS_AS(superlevel_threshold(0.17, 0.0, 45), Error);
  CHECK_THROWS_AS(superlevel_threshold(0.9, 0.2, 45), Error);
}

TEST_CASE("slice maximizer") {
  const CountVector r({1, 6, 1});
  CHECK(slice_maximizer(r, 1, {{0.0, 0.0}}) == doctest::Approx(std::log(6.0)));
  // r_2 = n/2: maximizer tends to 0 as the other coordinate goes to -inf.
  CHECK(slice_maximizer(CountVector({0, 4, 4}), 1, {{-50.0, 0.0}}) ==
        doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
  try {
    slice_maximizer(CountVector({4, 0, 4}), 1, {{0.0, 0.0}});
    FAIL("expected DegenerateSlice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSlice);
  }
  // The maximizer is a maximum along the slice.
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rr = random_positive_outcome(8, 3, rng);
    auto fixed = random_logodds(2, 2.0, rng);
    const std::size_t axis = rng() % 2;
    const double x = slice_maximizer(rr, axis, fixed);
    auto at = [&](double v) {
      auto u = fixed.coords;
      u[axis] = v;
      return log_p_at(rr, u);
    };
    CHECK(at(x) >= at(x + 1e-3));
    CHECK(at(x) >= at(x - 1e-3));
  }
}

TEST_CASE("superlevel slice") {
  const CountVector r({1, 6, 1});
  const LogOddsPoint fixed{{0.0, 0.0}};
  const double peak = slice_maximizer(r, 1, fixed);
  const double top = log_p_at(r, {0.0, peak});
  CHECK_FALSE(superlevel_slice(r, 1, fixed, top + 0.1).has_value());
  const auto tangent = superlevel_slice(r, 1, fixed, top);
  REQUIRE(tangent.has_value());
  CHECK(tangent->width() <= 2e-9 + 4 * kDomainPadding);
  CHECK(tangent->contains(peak));

  const double log_t = std::log(0.00375);
  const auto iv = superlevel_slice(r, 1, fixed, log_t);
  REQUIRE(iv.has_value());
  // Endpoints are rounded outward by the padding; undo it for the residual.
  for (double end : {iv->lo + kDomainPadding, iv->hi - kDomainPadding}) {
    CHECK(std::abs(log_p_at(r, {0.0, end}) - log_t) <= 1e-4);
  }
  CHECK(log_p_at(r, {0.0, iv->lo}) <= log_t);
  CHECK(log_p_at(r, {0.0, iv->hi}) <= log_t);

  // Unbounded side for a zero count.
  const auto open = superlevel_slice(CountVector({4, 0, 4}), 1, fixed, std::log(1e-3));
  REQUIRE(open.has_value());
  CHECK(std::isinf(open->lo));
}

TEST_CASE("concave superlevel") {
  auto f = [](double x) { return -(x - 1.0) * (x - 1.0); };
  const auto iv = concave_superlevel(f, 1.0, -4.0);
  REQUIRE(iv.has_value());
  CHECK(iv->lo <= -1.0);
  CHECK(iv->lo >= -1.0 - 1e-8);
  CHECK(iv->hi >= 3.0);
  CHECK(iv->hi <= 3.0 + 1e-8);
  CHECK_FALSE(concave_superlevel(f, 1.0, 0.5).has_value());
  auto mono = [](double x) { return x; };
  const auto half = concave_superlevel(mono, std::numeric_limits<double>::infinity(), 2.0);
  REQUIRE(half.has_value());
  CHECK(std::isinf(half->hi));
  CHECK(half->lo <= 2.0);
}

TEST_CASE("worked example domains") {
  const auto t = enumerate_outcomes(8, 3);
  const CountVector a({1, 6, 1}), b({2, 1, 5});
  const auto d = build_domain(a, b, 0.17, 0.001, t);
  REQUIRE(d.dim() == 2);
  for (const auto& iv : d.box) {
    CHECK(std::isfinite(iv.lo));
    CHECK(std::isfinite(iv.hi));
    CHECK(iv.lo < iv.hi);
  }
  // Each MLE lies in its own single-outcome box. The joint box may exclude
  // them: P_B at A's MLE is far below the threshold.
  CHECK(build_domain(a, a, 0.17, 0.001, t).contains(std::vector<double>{0.0, std::log(6.0)}));
  CHECK(build_domain(b, b, 0.17, 0.001, t)
            .contains(std::vector<double>{std::log(2.0 / 5), std::log(1.0 / 5)}));
  // The joint box holds the grid maximizer of the min p-value.
  const auto best = oracle_max_min_pvalue(a, b, 200);
  CHECK(d.contains(to_logodds(best.argmax).coords));
}

TEST_CASE("points outside the box fail a threshold") {
  const auto t = enumerate_outcomes(8, 3);
  const CountVector a({1, 6, 1}), b({2, 1, 5});
  const auto d = build_domain(a, b, 0.17, 0.001, t);
  const double log_t = std::log(d.threshold);
  // Walk a ring of points just outside the box.
  const int steps = 200;
  for (int s = 0; s <= steps; ++s) {
    const double f = static_cast<double>(s) / steps;
    const double x = d.box[0].lo + f * d.box[0].width();
    const double y = d.box[1].lo + f * d.box[1].width();
    for (const std::vector<double>& u :
         {std::vector<double>{x, d.box[1].lo - 1e-3}, std::vector<double>{x, d.box[1].hi + 1e-3},
          std::vector<double>{d.box[0].lo - 1e-3, y}, std::vector<double>{d.box[0].hi + 1e-3, y}}) {
      CHECK(std::min(log_p_at(a, u), log_p_at(b, u)) < log_t);
    }
  }
}

TEST_CASE("domain errors") {
  const auto t = enumerate_outcomes(8, 3);
  // Separated outcomes at a high level leave nothing to search.
  try {
    build_domain(CountVector({8, 0}), CountVector({0, 8}), 0.3, 0.01, enumerate_outcomes(8, 2));
    FAIL("expected EmptyDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDomain);
  }
  // Reference category unobserved in both outcomes.
  CHECK_THROWS_AS(build_domain(CountVector({4, 4, 0}), CountVector({3, 5, 0}), 0.1, 0.01, t),
                  Error);
  // A jointly zero axis without a floor leaves the box unbounded.
  CHECK_THROWS_AS(build_domain(CountVector({4, 0, 4}), CountVector({3, 0, 5}), 0.1, 0.01, t),
                  Error);
  DomainOptions floored;
  floored.floor_axes = {1};
  floored.floor_value = std::log(1e-12 / 8);
  const auto d = build_domain(CountVector({4, 0, 4}), CountVector({3, 0, 5}), 0.1, 0.01, t, floored);
  CHECK(d.box[1].lo <= floored.floor_value);
  CHECK(d.box[1].lo >= floored.floor_value - 2 * kDomainPadding);
  CHECK(std::isfinite(d.box[1].hi));
}

TEST_CASE("log P is concave and decays in log-odds") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto r = random_outcome(n, 3, rng);
    const auto u = random_logodds(2, 5.0, rng);
    const auto v = random_logodds(2, 5.0, rng);
    const std::vector<double> mid{0.5 * (u[0] + v[0]), 0.5 * (u[1] + v[1])};
    CHECK(0.5 * (log_p_at(r, u.coords) + log_p_at(r, v.coords)) <= log_p_at(r, mid) + 1e-10);
  }
  const auto t = enumerate_outcomes(8, 3);
  const CountVector a({1, 6, 1}), b({2, 1, 5});
  const auto d = build_domain(a, b, 0.17, 0.001, t);
  const double cx = 0.5 * (d.box[0].lo + d.box[0].hi), cy = 0.5 * (d.box[1].lo + d.box[1].hi);
  const double diag = std::hypot(d.box[0].width(), d.box[1].width());
  for (int ray = 0; ray < 100; ++ray) {
    const double theta = 2 * M_PI * ray / 100.0;
    const double dx = std::cos(theta), dy = std::sin(theta);
    double prev = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 20; ++s) {
      const double rad = 2 * diag + s * diag;
      const double lp = log_p_at(a, {cx + rad * dx, cy + rad * dy});
      CHECK(lp < prev);
      prev = lp;
    }
  }
}

TEST_CASE("domain containment over random instances") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const auto a = random_positive_outcome(n, 3, rng);
    const auto b = random_positive_outcome(n, 3, rng);
    const auto t = enumerate_outcomes(n, 3);
    const double alpha = 0.05 + 0.25 * (trial % 4) / 3.0;
    SearchDomain d;
    try {
      d = build_domain(a, b, alpha, 1e-3, t);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::EmptyDomain);
      continue;
    }
    const double m = static_cast<double>(t.size());
    const int res = 120;
    for_each_composition(res, 3, [&](std::span<const int> c) {
      if (c[0] == 0 || c[1] == 0 || c[2] == 0) return;
      const SimplexPoint p({static_cast<double>(c[0]) / res, static_cast<double>(c[1]) / res,
                            1.0 - static_cast<double>(c[0] + c[1]) / res});
      if (m * std::exp(log_prob(a, p)) >= alpha - 1e-3 &&
          m * std::exp(log_prob(b, p)) >= alpha - 1e-3)
        CHECK(d.contains(to_logodds(p).coords));
    });
  }
}
