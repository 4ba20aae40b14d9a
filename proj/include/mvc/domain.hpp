#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mvc/geometry.hpp"
#include "mvc/multinomial.hpp"

namespace mvc {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

/// Axis-aligned box in log-odds coordinates that contains every point where
/// both observed outcomes have probability at least `threshold`.
struct SearchDomain {
  std::vector<Interval> box;
  double threshold = 0.0;

  std::size_t dim() const noexcept { return box.size(); }
  bool contains(std::span<const double> u) const;
};

/// Outward padding applied to every computed box bound.
inline constexpr double kDomainPadding = 1e-6;

/// Endpoint tolerance of the bracket-and-bisect superlevel search.
inline constexpr double kSuperlevelTolerance = 1e-9;

/// (alpha - tau) / m. Throws InvalidTolerance unless 0 < tau < min(alpha,
/// 1 - alpha).
double superlevel_threshold(double alpha, double tau, std::uint64_t m);

/// Maximizer of log P(r_hat) along `axis` with the other log-odds coordinates
/// held at `fixed` (the axis entry of `fixed` is ignored). Throws
/// DegenerateSlice when the axis count is 0 or n.
double slice_maximizer(const CountVector& r_hat, std::size_t axis,
                       const LogOddsPoint& fixed);

/// The set {x : log P(r_hat) >= log_t} along the slice, rounded outward. Empty
/// when the slice maximum is below log_t. An unbounded side (axis count 0 or
/// n) is reported as an infinite endpoint.
std::optional<Interval> superlevel_slice(const CountVector& r_hat, std::size_t axis,
                                         const LogOddsPoint& fixed, double log_t);

/// Superlevel interval {x : f(x) >= level} of a concave function with
/// maximizer `peak` (possibly +-inf, meaning f is monotone). Endpoints are
/// located by doubling brackets and bisection to `tolerance`, and the
/// returned bounds lie outside the exact set.
std::optional<Interval> concave_superlevel(const std::function<double(double)>& f,
                                           double peak, double level,
                                           double tolerance = kSuperlevelTolerance);

/// Options for outcomes that share zero-count categories. Such a category has
/// an unbounded superlevel set towards p_i -> 0; the box stops at
/// `floor_value` on those axes and the region beyond is covered by the
/// lower-dimensional face where p_i = 0.
struct DomainOptions {
  std::vector<std::size_t> floor_axes;
  double floor_value = 0.0;
};

/// Builds the search box for two outcomes of the same (n, k); the last
/// category is the log-odds reference and must have a positive count in at
/// least one outcome. Throws EmptyDomain when no point can reach the
/// threshold for both outcomes.
SearchDomain build_domain(const CountVector& r_a, const CountVector& r_b, double alpha,
                          double tau, const OutcomeTable& table,
                          const DomainOptions& options = {});

/// Profile of log P(r_hat) along `axis`: the maximum over the remaining
/// coordinates (floored axes held at or above `options.floor_value`). Returns
/// nullopt when the profile is constant (axis and reference counts both 0).
std::optional<std::function<double(double)>> axis_profile(
    const CountVector& r_hat, std::size_t axis, const DomainOptions& options,
    double* peak);

}  // namespace mvc
