#include "mvc/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mvc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Brackets wider than this are treated as unbounded.
constexpr double kBracketLimit = 1e6;

// log(K + e^x) for K > 0.
double log_shifted_partition(double log_k, double x) {
  return x > log_k ? x + std::log1p(std::exp(log_k - x))
                   : log_k + std::log1p(std::exp(x - log_k));
}

// Locates the boundary between `inside` (f >= level) and the region beyond it
// in direction `dir`. Returns a point outside the set within `tolerance` of
// the boundary, or +-inf when no outside point is found.
double boundary(const std::function<double(double)>& f, double inside, double dir,
                double level, double tolerance) {
  double step = 1.0;
  double outside = inside + dir * step;
  while (f(outside) >= level) {
    inside = outside;
    step *= 2.0;
    if (step > kBracketLimit) return dir * kInf;
    outside = inside + dir * step;
  }
  while (std::abs(outside - inside) > tolerance) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (f(mid) >= level)
      inside = mid;
    else
      outside = mid;
  }
  return outside;
}

}  // namespace

bool SearchDomain::contains(std::span<const double> u) const {
  if (u.size() != box.size()) return false;
  for (std::size_t i = 0; i < box.size(); ++i)
    if (!box[i].contains(u[i])) return false;
  return true;
}

double superlevel_threshold(double alpha, double tau, std::uint64_t m) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidTolerance, "alpha must lie in (0, 1)");
  if (!(tau > 0.0) || tau >= alpha || tau >= 1.0 - alpha)
    throw Error(ErrorCode::InvalidTolerance, "tau must satisfy 0 < tau < min(alpha, 1 - alpha)");
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "empty outcome table");
  return (alpha - tau) / static_cast<double>(m);
}

std::optional<Interval> concave_superlevel(const std::function<double(double)>& f,
                                           double peak, double level,
                                           double tolerance) {
  double inside;
  if (std::isfinite(peak)) {
    if (!(f(peak) >= level)) return std::nullopt;
    inside = peak;
  } else {
    // Monotone: walk towards the increasing side until the level is reached.
    const double dir = peak > 0 ? 1.0 : -1.0;
    double x = 0.0;
    double step = 1.0;
    while (!(f(x) >= level)) {
      x = dir * step;
      step *= 2.0;
      if (step > 2.0 * kBracketLimit) return std::nullopt;
    }
    inside = x;
  }
  Interval out;
  out.lo = peak == -kInf ? -kInf : boundary(f, inside, -1.0, level, tolerance);
  out.hi = peak == kInf ? kInf : boundary(f, inside, 1.0, level, tolerance);
  return out;
}

namespace {

void check_axis(const CountVector& r_hat, std::size_t axis, const LogOddsPoint& fixed) {
  if (fixed.dim() + 1 != r_hat.k())
    throw Error(ErrorCode::DimensionMismatch, "slice point dimension mismatch");
  if (axis >= fixed.dim()) throw Error(ErrorCode::DimensionMismatch, "axis out of range");
}

// log(1 + sum_{j != axis} e^{u_j}).
double partition_without(const LogOddsPoint& fixed, std::size_t axis) {
  std::vector<double> others;
  others.reserve(fixed.dim());
  for (std::size_t j = 0; j < fixed.dim(); ++j)
    if (j != axis) others.push_back(fixed[j]);
  return log_partition(others);
}

}  // namespace

double slice_maximizer(const CountVector& r_hat, std::size_t axis,
                       const LogOddsPoint& fixed) {
  check_axis(r_hat, axis, fixed);
  const int c = r_hat[axis];
  const int n = r_hat.n();
  if (c == 0 || c == n)
    throw Error(ErrorCode::DegenerateSlice,
                "slice maximizer is at infinity for count " + std::to_string(c));
  return std::log(static_cast<double>(c)) - std::log(static_cast<double>(n - c)) +
         partition_without(fixed, axis);
}

std::optional<Interval> superlevel_slice(const CountVector& r_hat, std::size_t axis,
                                         const LogOddsPoint& fixed, double log_t) {
  check_axis(r_hat, axis, fixed);
  const int c = r_hat[axis];
  const int n = r_hat.n();
  double linear = log_kappa(r_hat);
  for (std::size_t j = 0; j < fixed.dim(); ++j)
    if (j != axis) linear += r_hat[j] * fixed[j];
  const double log_rest = partition_without(fixed, axis);
  auto f = [=](double x) {
    return linear + c * x - n * log_shifted_partition(log_rest, x);
  };
  const double peak = c == 0 ? -kInf : c == n ? kInf : slice_maximizer(r_hat, axis, fixed);
  return concave_superlevel(f, peak, log_t);
}

std::optional<std::function<double(double)>> axis_profile(
    const CountVector& r_hat, std::size_t axis, const DomainOptions& options,
    double* peak) {
  const std::size_t k = r_hat.k();
  const std::size_t ref = k - 1;
  const int n = r_hat.n();
  const int ri = r_hat[axis];
  const int d = ri + r_hat[ref];
  if (d == 0) return std::nullopt;

  // Other coordinates sit at their joint maximizer: positive counts at the
  // stationary point e^{u_j} = r_j (K + e^x) / d, zero counts on a floored
  // axis at the floor, other zero counts at -inf.
  double k_const = 1.0;
  for (std::size_t j : options.floor_axes)
    if (j != axis && r_hat[j] == 0) k_const += std::exp(options.floor_value);
  const double log_k = std::log(k_const);

  double c = log_kappa(r_hat) + d * std::log(static_cast<double>(d)) -
             n * std::log(static_cast<double>(n));
  for (std::size_t j = 0; j < ref; ++j)
    if (j != axis && r_hat[j] > 0) c += r_hat[j] * std::log(static_cast<double>(r_hat[j]));

  if (peak) {
    if (ri == 0)
      *peak = -kInf;
    else if (r_hat[ref] == 0)
      *peak = kInf;
    else
      *peak = std::log(static_cast<double>(ri)) + log_k -
              std::log(static_cast<double>(r_hat[ref]));
  }
  return [=](double x) { return c + ri * x - d * log_shifted_partition(log_k, x); };
}

SearchDomain build_domain(const CountVector& r_a, const CountVector& r_b, double alpha,
                          double tau, const OutcomeTable& table,
                          const DomainOptions& options) {
  if (r_a.k() != table.k() || r_b.k() != table.k() || r_a.n() != table.n() ||
      r_b.n() != table.n())
    throw Error(ErrorCode::DimensionMismatch, "outcomes do not match the table");
  const std::size_t k = table.k();
  const std::size_t dim = k - 1;
  const std::size_t ref = k - 1;
  if (r_a[ref] + r_b[ref] == 0)
    throw Error(ErrorCode::InvalidArgument,
                "reference category must be observed in at least one outcome");

  SearchDomain domain;
  domain.threshold = superlevel_threshold(alpha, tau, table.size());
  const double log_t = std::log(domain.threshold);

  std::vector<Interval> box(dim, Interval{-kInf, kInf});
  for (std::size_t axis : options.floor_axes) {
    if (axis >= dim) throw Error(ErrorCode::DimensionMismatch, "floor axis out of range");
    box[axis].lo = options.floor_value;
  }

  const auto intersect = [&](std::size_t axis, Interval iv) {
    box[axis].lo = std::max(box[axis].lo, iv.lo);
    box[axis].hi = std::min(box[axis].hi, iv.hi);
  };

  for (const CountVector* r : {&r_a, &r_b}) {
    const double lk = table.log_kappa(table.index_of(*r));
    if (lk < log_t)
      throw Error(ErrorCode::EmptyDomain, "outcome probability never reaches the threshold");
    // Closed-form outer box from log(1 + sum e^u) >= max{0, u}.
    for (std::size_t i = 0; i < dim; ++i) {
      const int ri = (*r)[i];
      const int rr = (*r)[ref];
      intersect(i, {ri > 0 ? (log_t - lk) / ri : -kInf, rr > 0 ? (lk - log_t) / rr : kInf});
    }
  }
  for (const auto& iv : box) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw Error(ErrorCode::InvalidArgument,
                  "search region is unbounded; jointly zero categories need a floor");
    if (iv.lo > iv.hi)
      throw Error(ErrorCode::EmptyDomain, "outer boxes of the two outcomes are disjoint");
  }

  // Tighten each axis to the exact extent of the superlevel set's projection.
  for (const CountVector* r : {&r_a, &r_b}) {
    for (std::size_t i = 0; i < dim; ++i) {
      double peak = 0.0;
      const auto profile = axis_profile(*r, i, options, &peak);
      if (!profile) continue;
      const auto extent = concave_superlevel(*profile, peak, log_t);
      if (!extent)
        throw Error(ErrorCode::EmptyDomain, "superlevel set is empty");
      intersect(i, {extent->lo - kDomainPadding, extent->hi + kDomainPadding});
    }
  }

  for (auto& iv : box) {
    if (iv.lo > iv.hi)
      throw Error(ErrorCode::EmptyDomain, "superlevel sets of the two outcomes are disjoint");
    iv.lo -= kDomainPadding;
    iv.hi += kDomainPadding;
  }
  domain.box = std::move(box);
  return domain;
}

}  // namespace mvc
