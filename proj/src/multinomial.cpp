#include "mvc/multinomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace mvc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log P_p(r) given log kappa(r) and log p (with log 0 = -inf).
double log_prob_with(std::span<const int> r, double log_kappa,
                     std::span<const double> log_p) {
  double acc = log_kappa;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;  // 0 * log 0 = 0
    if (log_p[i] == kNegInf) return kNegInf;
    acc += r[i] * log_p[i];
  }
  return acc;
}

std::vector<double> logs_of(std::span<const double> p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[i] = p[i] > 0.0 ? std::log(p[i]) : kNegInf;
  return out;
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::DegenerateCell: return "DegenerateCell";
    case ErrorCode::DegenerateSlice: return "DegenerateSlice";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

CountVector::CountVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2)
    throw Error(ErrorCode::InvalidDimension,
                "outcome needs at least two categories");
  for (int c : counts_) {
    if (c < 0) throw Error(ErrorCode::InvalidArgument, "negative count");
    n_ += c;
  }
  if (n_ <= 0) throw Error(ErrorCode::InvalidArgument, "sample size must be positive");
}

CountVector::CountVector(std::vector<int> counts, Unchecked)
    : counts_(std::move(counts)),
      n_(std::accumulate(counts_.begin(), counts_.end(), 0)) {}

CountVector CountVector::select(std::span<const std::size_t> categories) const {
  std::vector<int> out;
  out.reserve(categories.size());
  for (std::size_t c : categories) {
    if (c >= counts_.size())
      throw Error(ErrorCode::DimensionMismatch, "category out of range");
    out.push_back(counts_[c]);
  }
  CountVector result(std::move(out), Unchecked{});
  if (result.n_ != n_)
    throw Error(ErrorCode::InvalidArgument,
                "selection drops categories with positive counts");
  return result;
}

SimplexPoint::SimplexPoint(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorCode::InvalidDimension, "empty point");
  double sum = 0.0;
  for (double x : probs_) {
    if (!(x >= 0.0 && x <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "coordinate outside [0,1]");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw Error(ErrorCode::InvalidArgument, "coordinates do not sum to 1");
}

std::uint64_t outcome_count(int n, std::size_t k) {
  if (n < 0 || k == 0) return 0;
  // binomial(n + k - 1, min(n, k - 1)) by the multiplicative formula; each
  // partial product is itself a binomial coefficient, so division is exact.
  const std::uint64_t top = static_cast<std::uint64_t>(n) + k - 1;
  const std::uint64_t choose = std::min<std::uint64_t>(n, k - 1);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= choose; ++i) {
    acc = acc * (top - choose + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t outcome_budget() {
  if (const char* env = std::getenv("MVC_MAX_OUTCOMES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return OutcomeTable::kDefaultBudget;
}

OutcomeTable::OutcomeTable(int n, std::size_t k, std::uint64_t budget)
    : n_(n), k_(k) {
  if (k < 1) throw Error(ErrorCode::InvalidDimension, "k must be positive");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const std::uint64_t m = outcome_count(n, k);
  if (m > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "outcome table of size " + std::to_string(m) +
                    " exceeds budget " + std::to_string(budget));

  log_factorial_.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) log_factorial_[i] = std::lgamma(i + 1.0);

  counts_.reserve(m * k);
  log_kappa_.reserve(m);
  for_each_composition(n, k, [&](std::span<const int> c) {
    counts_.insert(counts_.end(), c.begin(), c.end());
    double lk = log_factorial_[n];
    for (int ci : c) lk -= log_factorial_[ci];
    log_kappa_.push_back(lk);
  });
}

std::size_t OutcomeTable::index_of(const CountVector& r) const {
  if (r.k() != k_ || r.n() != n_)
    throw Error(ErrorCode::DimensionMismatch, "outcome does not match table");
  const auto target = r.counts();
  for (std::size_t i = 0; i < size(); ++i) {
    const auto c = counts(i);
    if (std::equal(c.begin(), c.end(), target.begin())) return i;
  }
  throw Error(ErrorCode::DimensionMismatch, "outcome not in table");
}

std::vector<double> OutcomeTable::log_probs(const SimplexPoint& p) const {
  if (p.k() != k_)
    throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  const auto lp = logs_of(p.probs());
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i)
    out[i] = log_prob_with(counts(i), log_kappa_[i], lp);
  return out;
}

OutcomeTable enumerate_outcomes(int n, std::size_t k) {
  return enumerate_outcomes(n, k, outcome_budget());
}

OutcomeTable enumerate_outcomes(int n, std::size_t k, std::uint64_t budget) {
  if (k < 2) throw Error(ErrorCode::InvalidDimension, "k must be at least 2");
  return OutcomeTable(n, k, budget);
}

double log_kappa(const CountVector& r) {
  double acc = std::lgamma(r.n() + 1.0);
  for (int c : r.counts()) acc -= std::lgamma(c + 1.0);
  return acc;
}

double log_prob(const CountVector& r, const SimplexPoint& p) {
  if (r.k() != p.k())
    throw Error(ErrorCode::DimensionMismatch, "outcome and point differ in k");
  return log_prob_with(r.counts(), log_kappa(r), logs_of(p.probs()));
}

double p_value_from_log_probs(std::span<const double> log_probs,
                              std::size_t index) {
  const double threshold = log_probs[index];
  double sum = 0.0;
  for (double lp : log_probs)
    if (lp <= threshold) sum += std::exp(lp);
  return std::clamp(sum, 0.0, 1.0);
}

double exact_p_value(const CountVector& r_hat, const SimplexPoint& p,
                     const OutcomeTable& table) {
  if (p.k() != table.k())
    throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  const std::size_t index = table.index_of(r_hat);
  return p_value_from_log_probs(table.log_probs(p), index);
}

std::uint64_t grid_point_count(int resolution, std::size_t k) {
  return outcome_count(resolution, k);
}

OracleResult oracle_max_min_pvalue(const CountVector& r_a,
                                   const CountVector& r_b, int resolution) {
  if (r_a.k() != r_b.k() || r_a.n() != r_b.n())
    throw Error(ErrorCode::DimensionMismatch, "outcomes differ in (n, k)");
  if (resolution < 1)
    throw Error(ErrorCode::InvalidArgument, "grid resolution must be positive");
  constexpr std::uint64_t kGridBudget = 50'000'000;
  if (grid_point_count(resolution, r_a.k()) > kGridBudget)
    throw Error(ErrorCode::BudgetExceeded, "oracle grid too large");

  const OutcomeTable table = enumerate_outcomes(r_a.n(), r_a.k());
  const std::size_t ia = table.index_of(r_a);
  const std::size_t ib = table.index_of(r_b);
  const std::size_t k = table.k();

  std::vector<double> log_p(k);
  std::vector<double> lps(table.size());
  std::vector<int> best(k, 0);
  double best_value = -1.0;

  for_each_composition(resolution, k, [&](std::span<const int> c) {
    for (std::size_t i = 0; i < k; ++i)
      log_p[i] = c[i] > 0 ? std::log(static_cast<double>(c[i]) / resolution)
                          : kNegInf;
    for (std::size_t j = 0; j < table.size(); ++j)
      lps[j] = log_prob_with(table.counts(j), table.log_kappa(j), log_p);
    const double value = std::min(p_value_from_log_probs(lps, ia),
                                  p_value_from_log_probs(lps, ib));
    if (value > best_value) {
      best_value = value;
      best.assign(c.begin(), c.end());
    }
  });

  std::vector<double> probs(k);
  for (std::size_t i = 0; i < k; ++i)
    probs[i] = static_cast<double>(best[i]) / resolution;
  return OracleResult{best_value, SimplexPoint(std::move(probs))};
}

}  // namespace mvc
