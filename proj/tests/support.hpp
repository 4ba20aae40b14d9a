#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mvc/geometry.hpp"
#include "mvc/multinomial.hpp"

namespace mvc::testing {

inline CountVector random_outcome(int n, std::size_t k, std::mt19937_64& rng) {
  std::vector<int> counts(k, 0);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  for (int i = 0; i < n; ++i) ++counts[pick(rng)];
  return CountVector(std::move(counts));
}

inline CountVector random_positive_outcome(int n, std::size_t k, std::mt19937_64& rng) {
  std::vector<int> counts(k, 1);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  for (int i = static_cast<int>(k); i < n; ++i) ++counts[pick(rng)];
  return CountVector(std::move(counts));
}

/// Uniform on the simplex, optionally bounded away from the faces.
inline SimplexPoint random_point(std::size_t k, std::mt19937_64& rng, double floor = 0.0) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(k);
  for (auto& x : p) x = e(rng) + floor;
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= s;
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < k; ++i) rest -= p[i];
  p[k - 1] = std::max(0.0, rest);
  return SimplexPoint(std::move(p));
}

inline LogOddsPoint random_logodds(std::size_t dim, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  LogOddsPoint out;
  for (std::size_t i = 0; i < dim; ++i) out.coords.push_back(u(rng));
  return out;
}

/// Random non-degenerate simplex with `dim + 1` vertices near `center`.
inline SimplexCell random_cell(const LogOddsPoint& center, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    std::vector<LogOddsPoint> v;
    for (std::size_t j = 0; j <= center.dim(); ++j) {
      LogOddsPoint w = center;
      for (auto& x : w.coords) x += u(rng);
      v.push_back(std::move(w));
    }
    if (SimplexCell::affinely_independent(v)) return SimplexCell(std::move(v));
  }
}

/// Uniformly random point of a cell via Dirichlet(1,...,1) barycentric weights.
inline LogOddsPoint random_point_in(const SimplexCell& cell, std::mt19937_64& rng,
                                    std::vector<double>* weights_out = nullptr) {
  std::exponential_distribution<double> e(1.0);
  const auto verts = cell.vertices();
  std::vector<double> w(verts.size());
  for (auto& x : w) x = e(rng);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= s;
  LogOddsPoint out;
  out.coords.assign(cell.dim(), 0.0);
  for (std::size_t j = 0; j < verts.size(); ++j)
    for (std::size_t i = 0; i < cell.dim(); ++i) out.coords[i] += w[j] * verts[j][i];
  if (weights_out) *weights_out = std::move(w);
  return out;
}

}  // namespace mvc::testing
