#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mvc/domain.hpp"
#include "mvc/geometry.hpp"
#include "mvc/multinomial.hpp"

namespace mvc {

enum class Verdict { Intersect, Disjoint, Uncertain };

const char* to_string(Verdict v) noexcept;

struct DecisionConfig {
  double alpha = 0.05;
  double tau = 1e-3;
  /// Cells at or below this diameter are not refined further.
  double epsilon = 1e-3;
  /// Cell budget per face.
  std::uint64_t max_cells = 2'000'000;
  double slack = 1e-12;
  unsigned workers = 1;
  bool record_trace = false;

  /// Throws InvalidTolerance for an inconsistent configuration.
  void validate() const;
};

/// Probability mass allowed on a jointly unobserved category before the
/// search hands that region to the face where the category is zero.
inline constexpr double kFaceFloorMass = 1e-12;

/// Cells bisected per refinement round; their children are evaluated as one
/// batch. Fixed so that the processed set does not depend on the worker count.
inline constexpr std::size_t kRefineBatch = 64;

enum class CellAction { Certify, Prune, Unresolved, Refine, Frontier };

const char* to_string(CellAction a) noexcept;

struct TraceEntry {
  std::size_t face = 0;
  std::uint64_t cell_id = 0;
  std::int64_t parent_id = -1;
  std::vector<LogOddsPoint> vertices;
  double min_lower = 0.0;
  double min_upper = 1.0;
  CellAction action = CellAction::Refine;
};

struct FaceOutcome {
  /// Zero-based categories held at zero on this face.
  std::vector<std::size_t> zeroed;
  Verdict verdict = Verdict::Uncertain;
  std::uint64_t cells_processed = 0;
  std::uint64_t cells_pruned = 0;
  std::uint64_t unresolved = 0;
  bool empty_domain = false;
  bool budget_exhausted = false;
};

struct Decision {
  Verdict verdict = Verdict::Uncertain;
  /// Full k-dimensional point, zero on the face's collapsed categories.
  std::optional<SimplexPoint> witness;
  /// Zero-based categories held at zero where the witness lives.
  std::optional<std::vector<std::size_t>> face;
  std::uint64_t unresolved_count = 0;
  std::uint64_t cells_processed = 0;
  std::uint64_t cells_pruned = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  bool budget_exhausted = false;
  std::vector<FaceOutcome> faces;
  std::vector<TraceEntry> trace;
};

struct Face {
  std::vector<std::size_t> zeroed;
  std::vector<std::size_t> kept;
  CountVector a;
  CountVector b;
};

struct FacePlan {
  std::vector<std::size_t> support_union;
  std::vector<std::size_t> jointly_zero;
  /// Ordered by increasing number of zeroed categories, then
  /// lexicographically.
  std::vector<Face> faces;
};

/// Kuhn (Freudenthal) split of a box into dim! simplices sharing the box's
/// lower corner.
std::vector<SimplexCell> kuhn_triangulation(const SearchDomain& domain);

/// Adaptive refinement over the open simplex. Categories unobserved in both
/// outcomes are searched down to a mass of kFaceFloorMass; the region below
/// belongs to the faces handled by decide_with_faces.
Decision decide_interior(const CountVector& r_a, const CountVector& r_b,
                         const DecisionConfig& config);

FacePlan plan_faces(const CountVector& r_a, const CountVector& r_b);

/// Runs the interior search on every face of the jointly-zero categories,
/// interior first, stopping at the first INTERSECT. Each face gets its own
/// max_cells budget.
Decision decide_with_faces(const CountVector& r_a, const CountVector& r_b,
                           const DecisionConfig& config);

}  // namespace mvc
