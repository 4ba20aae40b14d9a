#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mvc/multinomial.hpp"

namespace mvc {

/// Log-odds coordinates u_i = log(p_i / p_k), i < k. The last category is the
/// reference.
struct LogOddsPoint {
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  bool operator==(const LogOddsPoint&) const = default;
};

LogOddsPoint to_logodds(const SimplexPoint& p);
SimplexPoint from_logodds(const LogOddsPoint& u);

/// log(1 + sum_i exp(u_i)), evaluated with the maximum factored out.
double log_partition(std::span<const double> u);

/// g(u) = sum_i (r_i - r_hat_i) u_i - (log kappa(r_hat) - log kappa(r)).
/// g(u) <= 0 exactly when r is in the p-value tail of r_hat at p(u).
struct HalfspaceFunctional {
  std::vector<double> normal;
  double offset = 0.0;

  double operator()(std::span<const double> u) const;
};

HalfspaceFunctional halfspace_for(const CountVector& r, const CountVector& r_hat,
                                  const OutcomeTable& table);

/// Functionals of every outcome in a table against one observed outcome.
class TailGeometry {
 public:
  TailGeometry(const CountVector& r_hat, const OutcomeTable& table);

  std::size_t observed_index() const noexcept { return observed_; }
  const HalfspaceFunctional& functional(std::size_t index) const {
    return functionals_[index];
  }
  std::size_t size() const noexcept { return functionals_.size(); }

 private:
  std::size_t observed_;
  std::vector<HalfspaceFunctional> functionals_;
};

/// A (k-1)-simplex in log-odds space.
class SimplexCell {
 public:
  static constexpr double kRankTolerance = 1e-10;

  /// Throws DegenerateCell unless the vertices are affinely independent.
  SimplexCell(std::vector<LogOddsPoint> vertices, int generation = 0);

  /// Skips the rank check. Tests use this for degenerate cells.
  static SimplexCell unchecked(std::vector<LogOddsPoint> vertices,
                               int generation = 0);

  std::size_t dim() const noexcept { return vertices_.front().dim(); }
  std::span<const LogOddsPoint> vertices() const noexcept { return vertices_; }
  const LogOddsPoint& vertex(std::size_t j) const { return vertices_[j]; }
  int generation() const noexcept { return generation_; }

  /// Maximum pairwise Euclidean distance between vertices.
  double diameter() const;
  LogOddsPoint centroid() const;

  /// Affine independence test on edge vectors scaled by the diameter.
  static bool affinely_independent(std::span<const LogOddsPoint> vertices);

 private:
  struct Unchecked {};
  SimplexCell(std::vector<LogOddsPoint> vertices, int generation, Unchecked);

  std::vector<LogOddsPoint> vertices_;
  int generation_ = 0;
};

struct TailClassification {
  std::vector<std::size_t> in_tail;
  std::vector<std::size_t> out_of_tail;
  std::vector<std::size_t> ambiguous;
};

/// Sorts every outcome into in-tail (g <= -slack at all vertices), out-of-tail
/// (g > slack at all vertices) or ambiguous.
TailClassification classify_cell(const SimplexCell& cell,
                                 const TailGeometry& tail, double slack);
TailClassification classify_cell(const SimplexCell& cell,
                                 const CountVector& r_hat,
                                 const OutcomeTable& table, double slack);

/// Longest-edge bisection. The first child keeps the lower-index endpoint of
/// the split edge, the second keeps the higher one.
std::pair<SimplexCell, SimplexCell> bisect(const SimplexCell& cell);

}  // namespace mvc
