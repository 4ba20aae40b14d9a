#include "mvc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mvc {

LogOddsPoint to_logodds(const SimplexPoint& p) {
  const std::size_t k = p.k();
  if (k < 2) throw Error(ErrorCode::InvalidDimension, "need at least two categories");
  for (double x : p.probs())
    if (x <= 0.0)
      throw Error(ErrorCode::BoundaryPoint, "log-odds undefined on the boundary");
  LogOddsPoint u;
  u.coords.resize(k - 1);
  const double log_ref = std::log(p[k - 1]);
  for (std::size_t i = 0; i + 1 < k; ++i) u.coords[i] = std::log(p[i]) - log_ref;
  return u;
}

double log_partition(std::span<const double> u) {
  double top = 0.0;
  for (double x : u) top = std::max(top, x);
  double acc = std::exp(-top);
  for (double x : u) acc += std::exp(x - top);
  return top + std::log(acc);
}

SimplexPoint from_logodds(const LogOddsPoint& u) {
  double top = 0.0;
  for (double x : u.coords) {
    if (!std::isfinite(x))
      throw Error(ErrorCode::InvalidArgument, "non-finite log-odds coordinate");
    top = std::max(top, x);
  }
  std::vector<double> p(u.dim() + 1);
  double total = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) total += p[i] = std::exp(u[i] - top);
  total += p.back() = std::exp(-top);
  for (double& x : p) x /= total;
  return SimplexPoint(std::move(p));
}

double HalfspaceFunctional::operator()(std::span<const double> u) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < normal.size(); ++i) acc += normal[i] * u[i];
  return acc - offset;
}

namespace {

HalfspaceFunctional functional_between(std::span<const int> r, double log_kappa_r,
                                       std::span<const int> r_hat,
                                       double log_kappa_hat) {
  HalfspaceFunctional g;
  g.normal.resize(r.size() - 1);
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    g.normal[i] = static_cast<double>(r[i] - r_hat[i]);
  g.offset = log_kappa_hat - log_kappa_r;
  return g;
}

}  // namespace

HalfspaceFunctional halfspace_for(const CountVector& r, const CountVector& r_hat,
                                  const OutcomeTable& table) {
  const std::size_t i = table.index_of(r);
  const std::size_t j = table.index_of(r_hat);
  return functional_between(table.counts(i), table.log_kappa(i), table.counts(j),
                            table.log_kappa(j));
}

TailGeometry::TailGeometry(const CountVector& r_hat, const OutcomeTable& table)
    : observed_(table.index_of(r_hat)) {
  functionals_.reserve(table.size());
  const auto hat = table.counts(observed_);
  const double lk_hat = table.log_kappa(observed_);
  for (std::size_t i = 0; i < table.size(); ++i)
    functionals_.push_back(
        functional_between(table.counts(i), table.log_kappa(i), hat, lk_hat));
}

SimplexCell::SimplexCell(std::vector<LogOddsPoint> vertices, int generation)
    : SimplexCell(std::move(vertices), generation, Unchecked{}) {
  if (!affinely_independent(vertices_))
    throw Error(ErrorCode::DegenerateCell, "cell vertices are affinely dependent");
}

SimplexCell::SimplexCell(std::vector<LogOddsPoint> vertices, int generation,
                         Unchecked)
    : vertices_(std::move(vertices)), generation_(generation) {
  if (vertices_.empty())
    throw Error(ErrorCode::InvalidDimension, "cell without vertices");
  const std::size_t d = vertices_.front().dim();
  if (d == 0 || vertices_.size() != d + 1)
    throw Error(ErrorCode::InvalidDimension, "a d-simplex needs d+1 vertices");
  for (const auto& v : vertices_)
    if (v.dim() != d)
      throw Error(ErrorCode::DimensionMismatch, "vertex dimensions differ");
}

SimplexCell SimplexCell::unchecked(std::vector<LogOddsPoint> vertices,
                                   int generation) {
  return SimplexCell(std::move(vertices), generation, Unchecked{});
}

namespace {

double distance(const LogOddsPoint& a, const LogOddsPoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

double SimplexCell::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      best = std::max(best, distance(vertices_[i], vertices_[j]));
  return best;
}

LogOddsPoint SimplexCell::centroid() const {
  LogOddsPoint c;
  c.coords.assign(dim(), 0.0);
  for (const auto& v : vertices_)
    for (std::size_t i = 0; i < dim(); ++i) c.coords[i] += v[i];
  for (double& x : c.coords) x /= static_cast<double>(vertices_.size());
  return c;
}

bool SimplexCell::affinely_independent(std::span<const LogOddsPoint> vertices) {
  const std::size_t d = vertices.size() - 1;
  double scale = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      scale = std::max(scale, distance(vertices[i], vertices[j]));
  if (!(scale > 0.0) || !std::isfinite(scale)) return false;

  // Gaussian elimination with partial pivoting on (w_j - w_0) / diameter.
  std::vector<double> a(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      a[r * d + c] = (vertices[r + 1][c] - vertices[0][c]) / scale;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r * d + col]) > std::abs(a[pivot * d + col])) pivot = r;
    if (std::abs(a[pivot * d + col]) <= kRankTolerance) return false;
    if (pivot != col)
      for (std::size_t c = 0; c < d; ++c) std::swap(a[col * d + c], a[pivot * d + c]);
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = a[r * d + col] / a[col * d + col];
      for (std::size_t c = col; c < d; ++c) a[r * d + c] -= f * a[col * d + c];
    }
  }
  return true;
}

TailClassification classify_cell(const SimplexCell& cell,
                                 const TailGeometry& tail, double slack) {
  TailClassification out;
  const auto vertices = cell.vertices();
  for (std::size_t r = 0; r < tail.size(); ++r) {
    const auto& g = tail.functional(r);
    bool all_in = true;
    bool all_out = true;
    for (const auto& w : vertices) {
      const double value = g(w.coords);
      all_in = all_in && value <= -slack;
      all_out = all_out && value > slack;
    }
    if (all_in)
      out.in_tail.push_back(r);
    else if (all_out)
      out.out_of_tail.push_back(r);
    else
      out.ambiguous.push_back(r);
  }
  return out;
}

TailClassification classify_cell(const SimplexCell& cell,
                                 const CountVector& r_hat,
                                 const OutcomeTable& table, double slack) {
  if (r_hat.k() != cell.dim() + 1)
    throw Error(ErrorCode::DimensionMismatch, "cell and outcome differ in k");
  return classify_cell(cell, TailGeometry(r_hat, table), slack);
}

std::pair<SimplexCell, SimplexCell> bisect(const SimplexCell& cell) {
  const auto vertices = cell.vertices();
  std::size_t ei = 0, ej = 1;
  double longest = -1.0;
  // Strict comparison keeps the lexicographically lowest pair on ties.
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const double len = distance(vertices[i], vertices[j]);
      if (len > longest) {
        longest = len;
        ei = i;
        ej = j;
      }
    }

  LogOddsPoint mid;
  mid.coords.resize(cell.dim());
  for (std::size_t c = 0; c < cell.dim(); ++c)
    mid.coords[c] = 0.5 * (vertices[ei][c] + vertices[ej][c]);

  std::vector<LogOddsPoint> first(vertices.begin(), vertices.end());
  std::vector<LogOddsPoint> second(vertices.begin(), vertices.end());
  first[ej] = mid;
  second[ei] = std::move(mid);
  const int gen = cell.generation() + 1;
  return {SimplexCell(std::move(first), gen), SimplexCell(std::move(second), gen)};
}

}  // namespace mvc
