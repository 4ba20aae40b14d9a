#include "mvc/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>

namespace mvc {

VertexProbCache::VertexProbCache(const OutcomeTable& table) : table_(&table) {}

std::size_t VertexProbCache::KeyHash::operator()(
    const std::vector<std::uint64_t>& key) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t word : key) {
    h ^= word + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::vector<double> VertexProbCache::compute(const LogOddsPoint& w) const {
  const OutcomeTable& t = *table_;
  const double lse = log_partition(w.coords);
  std::vector<double> probs(t.size());
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto c = t.counts(r);
    double lp = t.log_kappa(r) - t.n() * lse;
    for (std::size_t i = 0; i < w.dim(); ++i) lp += c[i] * w[i];
    probs[r] = std::exp(lp);
  }
  return probs;
}

std::span<const double> VertexProbCache::probabilities(const LogOddsPoint& w) {
  if (w.dim() + 1 != table_->k())
    throw Error(ErrorCode::DimensionMismatch, "vertex dimension does not match table");
  std::vector<std::uint64_t> key(w.dim());
  for (std::size_t i = 0; i < w.dim(); ++i) key[i] = std::bit_cast<std::uint64_t>(w[i]);
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return *it->second;
    }
  }
  auto value = std::make_unique<const std::vector<double>>(compute(w));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(std::move(key), std::move(value));
  (inserted ? misses_ : hits_).fetch_add(1, std::memory_order_relaxed);
  return *it->second;
}

std::size_t VertexProbCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

double vertex_min_prob(const SimplexCell& cell, std::size_t index,
                       VertexProbCache& cache) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : cell.vertices())
    best = std::min(best, cache.probabilities(w)[index]);
  return best;
}

double vertex_min_prob(const SimplexCell& cell, const CountVector& r,
                       VertexProbCache& cache) {
  return vertex_min_prob(cell, cache.table().index_of(r), cache);
}

namespace {

// Vertex-minimum probabilities of all outcomes, one pass over the vertices.
std::vector<double> vertex_minima(const SimplexCell& cell, VertexProbCache& cache) {
  std::vector<double> minima(cache.table().size(),
                             std::numeric_limits<double>::infinity());
  for (const auto& w : cell.vertices()) {
    const auto probs = cache.probabilities(w);
    for (std::size_t r = 0; r < minima.size(); ++r)
      minima[r] = std::min(minima[r], probs[r]);
  }
  return minima;
}

PValueInterval interval_from(const SimplexCell& cell, const TailGeometry& tail,
                             std::span<const double> minima, double slack) {
  const auto cls = classify_cell(cell, tail, slack);
  const std::size_t observed = tail.observed_index();
  double lower = 0.0;
  bool observed_counted = false;
  for (std::size_t r : cls.in_tail) {
    lower += minima[r];
    observed_counted = observed_counted || r == observed;
  }
  if (!observed_counted) lower += minima[observed];

  double excluded = 0.0;
  for (std::size_t r : cls.out_of_tail) excluded += minima[r];

  PValueInterval out;
  out.lower = std::clamp(lower, 0.0, 1.0);
  out.upper = std::clamp(1.0 - excluded, 0.0, 1.0);
  return out;
}

}  // namespace

PValueInterval pvalue_interval(const SimplexCell& cell, const TailGeometry& tail,
                               VertexProbCache& cache, double slack) {
  return interval_from(cell, tail, vertex_minima(cell, cache), slack);
}

PValueInterval pvalue_interval(const SimplexCell& cell, const CountVector& r_hat,
                               VertexProbCache& cache, double slack) {
  return pvalue_interval(cell, TailGeometry(r_hat, cache.table()), cache, slack);
}

CellBounds cell_bounds(const SimplexCell& cell, const TailGeometry& tail_a,
                       const TailGeometry& tail_b, VertexProbCache& cache,
                       double slack) {
  const auto minima = vertex_minima(cell, cache);
  CellBounds b;
  b.interval_a = interval_from(cell, tail_a, minima, slack);
  b.interval_b = interval_from(cell, tail_b, minima, slack);
  b.min_lower = std::min(b.interval_a.lower, b.interval_b.lower);
  b.min_upper = std::min(b.interval_a.upper, b.interval_b.upper);
  return b;
}

CellBounds cell_bounds(const SimplexCell& cell, const CountVector& r_a,
                       const CountVector& r_b, VertexProbCache& cache,
                       double slack) {
  const OutcomeTable& t = cache.table();
  return cell_bounds(cell, TailGeometry(r_a, t), TailGeometry(r_b, t), cache, slack);
}

}  // namespace mvc
