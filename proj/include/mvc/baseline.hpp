#pragma once

#include "mvc/multinomial.hpp"

namespace mvc {

/// Inverse chi-square CDF.
double chisq_quantile(int df, double prob);

/// Likelihood-ratio statistic G^2(p) = 2 sum_i n_i log(n_i / (n p_i)), with
/// 0 log 0 = 0. +inf when p_i = 0 for an observed category.
double g_squared(const CountVector& outcome, const SimplexPoint& p);

/// Asymptotic (Wilks) confidence region {p : G^2(p) <= chi2_{k-1, 1-alpha}}.
struct WilksRegion {
  CountVector outcome;
  double alpha;
  double threshold;

  WilksRegion(CountVector outcome, double alpha);
};

bool wilks_member(const WilksRegion& region, const SimplexPoint& p);

/// Grid scan of the simplex for a point inside both regions. Not certified:
/// a baseline for comparison only. `resolution` counts subdivisions per axis.
bool wilks_intersect(const CountVector& r_a, const CountVector& r_b, double alpha,
                     int resolution);

}  // namespace mvc
