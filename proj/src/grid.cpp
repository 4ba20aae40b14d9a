#include "mvc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>

#include "mvc/baseline.hpp"

namespace mvc {

std::vector<GridRow> membership_grid(const CountVector& r_a, const CountVector& r_b,
                                     double alpha, int points_per_axis,
                                     GridMethod method) {
  if (r_a.k() != r_b.k() || r_a.n() != r_b.n())
    throw Error(ErrorCode::DimensionMismatch, "outcomes differ in (n, k)");
  if (points_per_axis < 1)
    throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidTolerance, "alpha must lie in (0, 1)");
  const std::size_t k = r_a.k();
  const int steps = points_per_axis - 1;
  constexpr std::uint64_t kGridBudget = 20'000'000;
  if (steps > 0 && grid_point_count(steps, k) > kGridBudget)
    throw Error(ErrorCode::BudgetExceeded, "grid too large");

  std::vector<GridRow> rows;
  std::optional<OutcomeTable> table;
  std::size_t ia = 0, ib = 0;
  std::optional<WilksRegion> wa, wb;
  if (method == GridMethod::Mvc) {
    table.emplace(enumerate_outcomes(r_a.n(), k));
    ia = table->index_of(r_a);
    ib = table->index_of(r_b);
  } else {
    wa.emplace(r_a, alpha);
    wb.emplace(r_b, alpha);
  }

  auto classify = [&](std::vector<double> probs) {
    const SimplexPoint p(probs);
    GridRow row;
    if (table) {
      const auto lps = table->log_probs(p);
      row.in_a = p_value_from_log_probs(lps, ia) >= alpha;
      row.in_b = p_value_from_log_probs(lps, ib) >= alpha;
    } else {
      row.in_a = wilks_member(*wa, p);
      row.in_b = wilks_member(*wb, p);
    }
    row.p = std::move(probs);
    rows.push_back(std::move(row));
  };

  if (steps == 0) {
    classify(std::vector<double>(k, 1.0 / static_cast<double>(k)));
    return rows;
  }
  for_each_composition(steps, k, [&](std::span<const int> c) {
    std::vector<double> probs(k);
    for (std::size_t i = 0; i < k; ++i) probs[i] = static_cast<double>(c[i]) / steps;
    classify(std::move(probs));
  });
  return rows;
}

void write_grid_csv(const std::vector<GridRow>& rows, std::ostream& out) {
  const std::size_t k = rows.empty() ? 0 : rows.front().p.size();
  for (std::size_t i = 0; i < k; ++i) out << 'p' << (i + 1) << ',';
  out << "in_A,in_B\n";
  char buf[32];
  for (const auto& row : rows) {
    for (double x : row.p) {
      std::snprintf(buf, sizeof buf, "%.12g,", x);
      out << buf;
    }
    out << (row.in_a ? 1 : 0) << ',' << (row.in_b ? 1 : 0) << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "failed to write grid");
}

void write_grid_svg(const std::vector<GridRow>& rows, int points_per_axis,
                    std::ostream& out) {
  if (!rows.empty() && rows.front().p.size() != 3)
    throw Error(ErrorCode::InvalidArgument, "ternary plot needs three categories");
  constexpr double kSide = 600.0;
  constexpr double kMargin = 40.0;
  const double height = kSide * std::sqrt(3.0) / 2.0;
  const double radius = std::max(0.6, 0.5 * kSide / std::max(1, points_per_axis - 1));
  // Category 1 bottom-left, 2 bottom-right, 3 top.
  auto x_of = [&](const std::vector<double>& p) { return kMargin + kSide * (p[1] + 0.5 * p[2]); };
  auto y_of = [&](const std::vector<double>& p) { return kMargin + height * (1.0 - p[2]); };

  char buf[256];
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                "width=\"%.0f\" height=\"%.0f\">\n",
                kSide + 2 * kMargin, height + 2 * kMargin + 30);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                kMargin, kMargin + height, kMargin + kSide, kMargin + height,
                kMargin + kSide / 2, kMargin);
  out << buf;
  for (const auto& row : rows) {
    if (!row.in_a && !row.in_b) continue;
    const char* fill = row.in_a && row.in_b ? "#7b3294" : row.in_a ? "#2c7bb6" : "#d7191c";
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\" "
                  "fill-opacity=\"0.6\"/>\n",
                  x_of(row.p), y_of(row.p), radius, fill);
    out << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.0f\" y=\"%.0f\" font-size=\"14\">blue: A only, red: B only, "
                "purple: both</text>\n",
                kMargin, height + 2 * kMargin + 15);
  out << buf << "</svg>\n";
  if (!out) throw Error(ErrorCode::Io, "failed to write svg");
}

}  // namespace mvc
