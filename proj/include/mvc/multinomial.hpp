#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mvc/error.hpp"

namespace mvc {

/// An observed outcome: category counts summing to the sample size n.
class CountVector {
 public:
  /// Throws InvalidDimension for fewer than two categories and
  /// InvalidArgument for negative counts or an all-zero vector.
  explicit CountVector(std::vector<int> counts);

  std::size_t k() const noexcept { return counts_.size(); }
  int n() const noexcept { return n_; }
  int operator[](std::size_t i) const { return counts_[i]; }
  std::span<const int> counts() const noexcept { return counts_; }

  /// Outcome restricted to the listed categories, in the given order. The
  /// result may have a single category; only the engine's face reduction
  /// builds such vectors.
  CountVector select(std::span<const std::size_t> categories) const;

  bool operator==(const CountVector&) const = default;

 private:
  struct Unchecked {};
  CountVector(std::vector<int> counts, Unchecked);

  std::vector<int> counts_;
  int n_ = 0;
};

/// A point of the closed probability simplex.
class SimplexPoint {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Throws InvalidArgument if a coordinate leaves [0,1] or the coordinates
  /// do not sum to one within kSumTolerance.
  explicit SimplexPoint(std::vector<double> probs);

  std::size_t k() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  bool operator==(const SimplexPoint&) const = default;

 private:
  std::vector<double> probs_;
};

/// Every outcome of n draws over k categories, with log multinomial
/// coefficients. Immutable after construction.
class OutcomeTable {
 public:
  static constexpr std::uint64_t kDefaultBudget = 5'000'000;

  OutcomeTable(int n, std::size_t k, std::uint64_t budget);

  int n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return log_kappa_.size(); }

  /// Counts of outcome `index`, k entries.
  std::span<const int> counts(std::size_t index) const {
    return {counts_.data() + index * k_, k_};
  }
  double log_kappa(std::size_t index) const { return log_kappa_[index]; }
  std::span<const double> log_kappas() const noexcept { return log_kappa_; }
  /// log(i!) for i = 0..n.
  double log_factorial(int i) const { return log_factorial_[i]; }

  /// Position of `r` in enumeration order. Throws DimensionMismatch if `r`
  /// does not belong to this table.
  std::size_t index_of(const CountVector& r) const;

  /// Log-probability of every outcome under `p`, in enumeration order.
  std::vector<double> log_probs(const SimplexPoint& p) const;

 private:
  int n_;
  std::size_t k_;
  std::vector<int> counts_;
  std::vector<double> log_kappa_;
  std::vector<double> log_factorial_;
};

/// binomial(n+k-1, k-1), saturating at UINT64_MAX.
std::uint64_t outcome_count(int n, std::size_t k);

/// The enumeration budget: MVC_MAX_OUTCOMES when set to a positive integer,
/// OutcomeTable::kDefaultBudget otherwise.
std::uint64_t outcome_budget();

OutcomeTable enumerate_outcomes(int n, std::size_t k);
OutcomeTable enumerate_outcomes(int n, std::size_t k, std::uint64_t budget);

double log_kappa(const CountVector& r);

/// log P_p(r); -inf exactly when some p_i = 0 with r_i > 0.
double log_prob(const CountVector& r, const SimplexPoint& p);

/// Total probability under p of the outcomes no more likely than r_hat.
/// Ties are included; comparisons are exact on log-probabilities.
double exact_p_value(const CountVector& r_hat, const SimplexPoint& p,
                     const OutcomeTable& table);

/// p-value of outcome `index` given precomputed log-probabilities of every
/// outcome at the same parameter.
double p_value_from_log_probs(std::span<const double> log_probs,
                              std::size_t index);

struct OracleResult {
  double value = 0.0;
  SimplexPoint argmax;
};

/// Number of points in the barycentric grid {c / resolution : sum c =
/// resolution} over k categories.
std::uint64_t grid_point_count(int resolution, std::size_t k);

/// Dense-grid maximum of min{rho_A(p), rho_B(p)} over the barycentric grid of
/// the given resolution, faces included. The first maximizer in grid order
/// is reported.
OracleResult oracle_max_min_pvalue(const CountVector& r_a,
                                   const CountVector& r_b, int resolution);

/// Calls `visit(point)` for every composition of `total` into k parts, in
/// lexicographically decreasing order of the leading coordinates.
template <typename Visit>
void for_each_composition(int total, std::size_t k, Visit&& visit) {
  std::vector<int> c(k, 0);
  c[0] = total;
  for (;;) {
    visit(std::span<const int>(c));
    // Find the rightmost non-last position holding mass and move one unit
    // right, collecting everything behind it.
    std::size_t j = k - 1;
    while (j > 0 && c[j - 1] == 0) --j;
    if (j == 0) return;
    const int tail = c[k - 1];
    c[k - 1] = 0;
    --c[j - 1];
    c[j] = tail + 1;
  }
}

}  // namespace mvc
