#include "mvc/engine.hpp"

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "mvc/bounds.hpp"

namespace mvc {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Intersect: return "INTERSECT";
    case Verdict::Disjoint: return "DISJOINT";
    case Verdict::Uncertain: return "UNCERTAIN";
  }
  return "UNKNOWN";
}

const char* to_string(CellAction a) noexcept {
  switch (a) {
    case CellAction::Certify: return "certify";
    case CellAction::Prune: return "prune";
    case CellAction::Unresolved: return "unresolved";
    case CellAction::Refine: return "refine";
    case CellAction::Frontier: return "frontier";
  }
  return "unknown";
}

void DecisionConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidTolerance, "alpha must lie in (0, 1)");
  if (!(tau > 0.0) || tau >= std::min(alpha, 1.0 - alpha))
    throw Error(ErrorCode::InvalidTolerance, "tau must satisfy 0 < tau < min(alpha, 1 - alpha)");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidTolerance, "epsilon must be positive");
  if (max_cells < 2) throw Error(ErrorCode::InvalidTolerance, "max_cells must be at least 2");
  if (!(slack >= 0.0)) throw Error(ErrorCode::InvalidTolerance, "slack must be non-negative");
}

std::vector<SimplexCell> kuhn_triangulation(const SearchDomain& domain) {
  const std::size_t d = domain.dim();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::vector<SimplexCell> cells;
  do {
    std::vector<LogOddsPoint> vertices;
    LogOddsPoint v;
    for (const auto& iv : domain.box) v.coords.push_back(iv.lo);
    vertices.push_back(v);
    for (std::size_t axis : order) {
      v.coords[axis] = domain.box[axis].hi;
      vertices.push_back(v);
    }
    cells.emplace_back(std::move(vertices));
  } while (std::next_permutation(order.begin(), order.end()));
  return cells;
}

namespace {

// Outcome of one face search, in the face's own category order.
struct FaceSearch {
  Verdict verdict = Verdict::Uncertain;
  std::optional<SimplexPoint> witness;
  std::uint64_t processed = 0;
  std::uint64_t pruned = 0;
  std::uint64_t unresolved = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  bool empty_domain = false;
  bool budget_exhausted = false;
};

struct QueuedCell {
  double priority;
  std::uint64_t id;
  SimplexCell cell;
};

struct QueueOrder {
  // Highest upper bound first; earlier ids first on ties.
  bool operator()(const QueuedCell& x, const QueuedCell& y) const {
    if (x.priority != y.priority) return x.priority < y.priority;
    return x.id > y.id;
  }
};

struct PendingCell {
  std::uint64_t id;
  std::int64_t parent;
  SimplexCell cell;
};

class Refinement {
 public:
  Refinement(const CountVector& a, const CountVector& b, const OutcomeTable& table,
             const DecisionConfig& config, std::size_t face, std::uint64_t budget,
             std::vector<TraceEntry>* trace)
      : config_(config),
        tail_a_(a, table),
        tail_b_(b, table),
        cache_(table),
        face_(face),
        budget_(budget),
        trace_(trace),
        arena_(static_cast<int>(std::max(1u, config.workers))) {}

  FaceSearch run(const SearchDomain& domain) {
    std::vector<PendingCell> batch;
    for (auto& cell : kuhn_triangulation(domain))
      batch.push_back({next_id_++, -1, std::move(cell)});

    for (;;) {
      if (result_.processed + batch.size() > budget_) {
        result_.budget_exhausted = true;
        for (auto& p : batch) record(p, CellBounds{}, CellAction::Frontier);
        break;
      }
      if (evaluate(batch)) break;
      if (queue_.empty()) break;
      batch.clear();
      for (std::size_t popped = 0; popped < kRefineBatch && !queue_.empty(); ++popped) {
        const QueuedCell top = queue_.top();
        queue_.pop();
        try {
          auto [first, second] = bisect(top.cell);
          batch.push_back({next_id_++, static_cast<std::int64_t>(top.id), std::move(first)});
          batch.push_back({next_id_++, static_cast<std::int64_t>(top.id), std::move(second)});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DegenerateCell) throw;
          ++result_.unresolved;
        }
      }
    }

    if (result_.verdict != Verdict::Intersect) {
      while (!queue_.empty()) {
        if (trace_) {
          const auto& top = queue_.top();
          trace_->push_back({face_, top.id, -1,
                             {top.cell.vertices().begin(), top.cell.vertices().end()},
                             0.0, top.priority, CellAction::Frontier});
        }
        queue_.pop();
      }
      result_.verdict = (result_.unresolved == 0 && !result_.budget_exhausted)
                            ? Verdict::Disjoint
                            : Verdict::Uncertain;
    }
    result_.cache_hits = cache_.hits();
    result_.cache_misses = cache_.misses();
    return result_;
  }

 private:
  // Computes bounds for the batch (possibly in parallel) and applies the
  // actions in batch order. Returns true once a cell certifies intersection.
  bool evaluate(const std::vector<PendingCell>& batch) {
    std::vector<CellBounds> bounds(batch.size());
    auto work = [&](std::size_t i) {
      bounds[i] = cell_bounds(batch[i].cell, tail_a_, tail_b_, cache_, config_.slack);
    };
    if (config_.workers > 1 && batch.size() > 1) {
      arena_.execute([&] {
        tbb::parallel_for(tbb::blocked_range<std::size_t>(0, batch.size()),
                          [&](const tbb::blocked_range<std::size_t>& range) {
                            for (std::size_t i = range.begin(); i != range.end(); ++i) work(i);
                          });
      });
    } else {
      for (std::size_t i = 0; i < batch.size(); ++i) work(i);
    }

    const double accept = config_.alpha + config_.tau;
    const double reject = config_.alpha - config_.tau;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto& p = batch[i];
      const auto& b = bounds[i];
      ++result_.processed;
      if (b.min_lower >= accept) {
        record(p, b, CellAction::Certify);
        result_.verdict = Verdict::Intersect;
        result_.witness = from_logodds(p.cell.centroid());
        return true;
      }
      if (b.min_upper < reject) {
        ++result_.pruned;
        record(p, b, CellAction::Prune);
      } else if (p.cell.diameter() <= config_.epsilon) {
        ++result_.unresolved;
        record(p, b, CellAction::Unresolved);
      } else {
        record(p, b, CellAction::Refine);
        queue_.push({b.min_upper, p.id, p.cell});
      }
    }
    return false;
  }

  void record(const PendingCell& p, const CellBounds& b, CellAction action) {
    if (!trace_) return;
    trace_->push_back({face_, p.id, p.parent,
                       {p.cell.vertices().begin(), p.cell.vertices().end()},
                       b.min_lower, b.min_upper, action});
  }

  const DecisionConfig& config_;
  TailGeometry tail_a_;
  TailGeometry tail_b_;
  VertexProbCache cache_;
  std::size_t face_;
  std::uint64_t budget_;
  std::vector<TraceEntry>* trace_;
  tbb::task_arena arena_;
  std::priority_queue<QueuedCell, std::vector<QueuedCell>, QueueOrder> queue_;
  std::uint64_t next_id_ = 0;
  FaceSearch result_;
};

// Searches the open simplex of one face. `a` and `b` may have a single
// category, in which case the p-value is identically 1.
FaceSearch search_face(const CountVector& a, const CountVector& b,
                       const DecisionConfig& config, std::size_t face_index,
                       std::uint64_t budget, std::vector<TraceEntry>* trace) {
  const std::size_t k = a.k();
  FaceSearch out;
  if (k == 1) {
    out.verdict = Verdict::Intersect;
    out.witness = SimplexPoint({1.0});
    return out;
  }

  // Reference category: the last one observed in either outcome.
  std::size_t ref = k - 1;
  while (a[ref] + b[ref] == 0) --ref;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < k; ++i)
    if (i != ref) order.push_back(i);
  order.push_back(ref);
  const CountVector pa = a.select(order);
  const CountVector pb = b.select(order);

  DomainOptions options;
  options.floor_value = std::log(kFaceFloorMass / a.n());
  for (std::size_t i = 0; i + 1 < k; ++i)
    if (pa[i] == 0 && pb[i] == 0) options.floor_axes.push_back(i);

  const OutcomeTable table = enumerate_outcomes(a.n(), k);
  SearchDomain domain;
  try {
    domain = build_domain(pa, pb, config.alpha, config.tau, table, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyDomain) throw;
    out.verdict = Verdict::Disjoint;
    out.empty_domain = true;
    return out;
  }

  Refinement refinement(pa, pb, table, config, face_index, budget, trace);
  out = refinement.run(domain);
  if (out.witness) {
    std::vector<double> p(k);
    for (std::size_t i = 0; i < k; ++i) p[order[i]] = (*out.witness)[i];
    out.witness = SimplexPoint(std::move(p));
  }
  return out;
}

void check_pair(const CountVector& a, const CountVector& b) {
  if (a.k() != b.k() || a.n() != b.n())
    throw Error(ErrorCode::DimensionMismatch, "outcomes differ in (n, k)");
}

}  // namespace

Decision decide_interior(const CountVector& r_a, const CountVector& r_b,
                         const DecisionConfig& config) {
  config.validate();
  check_pair(r_a, r_b);
  Decision d;
  const auto s = search_face(r_a, r_b, config, 0, config.max_cells,
                             config.record_trace ? &d.trace : nullptr);
  d.verdict = s.verdict;
  d.witness = s.witness;
  if (s.witness) d.face = std::vector<std::size_t>{};
  d.unresolved_count = s.unresolved;
  d.cells_processed = s.processed;
  d.cells_pruned = s.pruned;
  d.cache_hits = s.cache_hits;
  d.cache_misses = s.cache_misses;
  d.budget_exhausted = s.budget_exhausted;
  d.faces.push_back({{}, s.verdict, s.processed, s.pruned, s.unresolved, s.empty_domain,
                     s.budget_exhausted});
  return d;
}

FacePlan plan_faces(const CountVector& r_a, const CountVector& r_b) {
  check_pair(r_a, r_b);
  FacePlan plan;
  for (std::size_t i = 0; i < r_a.k(); ++i)
    (r_a[i] > 0 || r_b[i] > 0 ? plan.support_union : plan.jointly_zero).push_back(i);

  const std::size_t z = plan.jointly_zero.size();
  if (z >= 8 * sizeof(std::uint64_t) - 1)
    throw Error(ErrorCode::BudgetExceeded, "too many jointly zero categories");
  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << z); ++mask) {
    std::vector<std::size_t> t;
    for (std::size_t j = 0; j < z; ++j)
      if (mask & (std::uint64_t{1} << j)) t.push_back(plan.jointly_zero[j]);
    subsets.push_back(std::move(t));
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });

  for (auto& t : subsets) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < r_a.k(); ++i)
      if (!std::binary_search(t.begin(), t.end(), i)) kept.push_back(i);
    plan.faces.push_back({std::move(t), kept, r_a.select(kept), r_b.select(kept)});
  }
  return plan;
}

Decision decide_with_faces(const CountVector& r_a, const CountVector& r_b,
                           const DecisionConfig& config) {
  config.validate();
  const FacePlan plan = plan_faces(r_a, r_b);
  Decision d;
  bool all_disjoint = true;
  for (std::size_t f = 0; f < plan.faces.size(); ++f) {
    const Face& face = plan.faces[f];
    const auto s = search_face(face.a, face.b, config, f, config.max_cells,
                               config.record_trace ? &d.trace : nullptr);
    d.cells_processed += s.processed;
    d.cells_pruned += s.pruned;
    d.unresolved_count += s.unresolved;
    d.cache_hits += s.cache_hits;
    d.cache_misses += s.cache_misses;
    d.budget_exhausted = d.budget_exhausted || s.budget_exhausted;
    d.faces.push_back({face.zeroed, s.verdict, s.processed, s.pruned, s.unresolved,
                       s.empty_domain, s.budget_exhausted});
    if (s.verdict == Verdict::Intersect) {
      std::vector<double> p(r_a.k(), 0.0);
      for (std::size_t i = 0; i < face.kept.size(); ++i) p[face.kept[i]] = (*s.witness)[i];
      d.verdict = Verdict::Intersect;
      d.witness = SimplexPoint(std::move(p));
      d.face = face.zeroed;
      return d;
    }
    all_disjoint = all_disjoint && s.verdict == Verdict::Disjoint;
  }
  d.verdict = all_disjoint ? Verdict::Disjoint : Verdict::Uncertain;
  return d;
}

}  // namespace mvc
