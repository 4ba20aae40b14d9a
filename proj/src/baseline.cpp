#include "mvc/baseline.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <limits>

namespace mvc {

double chisq_quantile(int df, double prob) {
  if (df < 1) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be positive");
  if (!(prob > 0.0 && prob < 1.0))
    throw Error(ErrorCode::InvalidArgument, "probability must lie in (0, 1)");
  return boost::math::quantile(boost::math::chi_squared_distribution<double>(df), prob);
}

double g_squared(const CountVector& outcome, const SimplexPoint& p) {
  if (outcome.k() != p.k())
    throw Error(ErrorCode::DimensionMismatch, "outcome and point differ in k");
  const double n = outcome.n();
  double acc = 0.0;
  for (std::size_t i = 0; i < outcome.k(); ++i) {
    const int c = outcome[i];
    if (c == 0) continue;
    if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
    acc += c * std::log(c / (n * p[i]));
  }
  return 2.0 * acc;
}

WilksRegion::WilksRegion(CountVector outcome_, double alpha_)
    : outcome(std::move(outcome_)), alpha(alpha_) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidTolerance, "alpha must lie in (0, 1)");
  threshold = chisq_quantile(static_cast<int>(outcome.k()) - 1, 1.0 - alpha);
}

bool wilks_member(const WilksRegion& region, const SimplexPoint& p) {
  return g_squared(region.outcome, p) <= region.threshold;
}

bool wilks_intersect(const CountVector& r_a, const CountVector& r_b, double alpha,
                     int resolution) {
  if (r_a.k() != r_b.k() || r_a.n() != r_b.n())
    throw Error(ErrorCode::DimensionMismatch, "outcomes differ in (n, k)");
  if (resolution < 1) throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  constexpr std::uint64_t kGridBudget = 50'000'000;
  if (grid_point_count(resolution, r_a.k()) > kGridBudget)
    throw Error(ErrorCode::BudgetExceeded, "baseline grid too large");

  const WilksRegion ra(r_a, alpha);
  const WilksRegion rb(r_b, alpha);
  bool found = false;
  std::vector<double> probs(r_a.k());
  for_each_composition(resolution, r_a.k(), [&](std::span<const int> c) {
    if (found) return;
    for (std::size_t i = 0; i < c.size(); ++i)
      probs[i] = static_cast<double>(c[i]) / resolution;
    const SimplexPoint p(probs);
    found = wilks_member(ra, p) && wilks_member(rb, p);
  });
  return found;
}

}  // namespace mvc
