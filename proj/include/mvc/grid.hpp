#pragma once

#include <iosfwd>
#include <vector>

#include "mvc/multinomial.hpp"

namespace mvc {

enum class GridMethod { Mvc, ChiSquare };

struct GridRow {
  std::vector<double> p;
  bool in_a = false;
  bool in_b = false;
};

/// Membership of both outcomes' confidence regions over a barycentric grid
/// with `points_per_axis` points along each edge (a single centroid row when
/// it is 1). Mvc membership is exact_p_value >= alpha; ChiSquare uses the
/// Wilks region.
std::vector<GridRow> membership_grid(const CountVector& r_a, const CountVector& r_b,
                                     double alpha, int points_per_axis,
                                     GridMethod method);

/// CSV with header p1,...,pk,in_A,in_B; probabilities to 12 significant
/// digits, memberships as 0/1.
void write_grid_csv(const std::vector<GridRow>& rows, std::ostream& out);

/// Static SVG 1.1 ternary plot of a three-category grid.
void write_grid_svg(const std::vector<GridRow>& rows, int points_per_axis,
                    std::ostream& out);

}  // namespace mvc
