#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "mvc/geometry.hpp"
#include "mvc/multinomial.hpp"

namespace mvc {

/// Probabilities of every outcome at log-odds vertices, keyed by the exact
/// bit patterns of the vertex coordinates. Safe for concurrent use; entries
/// are never removed, so returned spans stay valid for the cache lifetime.
class VertexProbCache {
 public:
  explicit VertexProbCache(const OutcomeTable& table);

  VertexProbCache(const VertexProbCache&) = delete;
  VertexProbCache& operator=(const VertexProbCache&) = delete;

  std::span<const double> probabilities(const LogOddsPoint& w);

  const OutcomeTable& table() const noexcept { return *table_; }
  std::uint64_t hits() const noexcept { return hits_.load(); }
  std::uint64_t misses() const noexcept { return misses_.load(); }
  std::size_t size() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept;
  };

  std::vector<double> compute(const LogOddsPoint& w) const;

  const OutcomeTable* table_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::vector<std::uint64_t>, std::unique_ptr<const std::vector<double>>,
                     KeyHash>
      entries_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

struct PValueInterval {
  double lower = 0.0;
  double upper = 1.0;
};

struct CellBounds {
  PValueInterval interval_a;
  PValueInterval interval_b;
  double min_lower = 0.0;
  double min_upper = 1.0;
};

/// Minimum over the cell's vertices of P(outcome `index`). By concavity of the
/// log-likelihood in log-odds coordinates this bounds P from below on the
/// whole cell.
double vertex_min_prob(const SimplexCell& cell, std::size_t index,
                       VertexProbCache& cache);
double vertex_min_prob(const SimplexCell& cell, const CountVector& r,
                       VertexProbCache& cache);

/// Interval containing exact_p_value(r_hat, p) for every p in the cell. The
/// observed outcome always counts towards the lower bound.
PValueInterval pvalue_interval(const SimplexCell& cell, const TailGeometry& tail,
                               VertexProbCache& cache, double slack);
PValueInterval pvalue_interval(const SimplexCell& cell, const CountVector& r_hat,
                               VertexProbCache& cache, double slack);

CellBounds cell_bounds(const SimplexCell& cell, const TailGeometry& tail_a,
                       const TailGeometry& tail_b, VertexProbCache& cache,
                       double slack);
CellBounds cell_bounds(const SimplexCell& cell, const CountVector& r_a,
                       const CountVector& r_b, VertexProbCache& cache,
                       double slack);

}  // namespace mvc
