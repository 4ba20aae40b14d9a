#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvc/engine.hpp"

namespace mvc {

inline constexpr std::string_view kReportSchema = "mvc-run-report/1";

/// Machine-readable summary of one decision. Category numbers in `face` and
/// `faces[].zeroed` are one-based.
struct RunReport {
  struct Stats {
    std::uint64_t cells_processed = 0;
    std::uint64_t cells_pruned = 0;
    std::uint64_t unresolved = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    bool budget_exhausted = false;
    double wall_time_ms = 0.0;

    bool operator==(const Stats&) const = default;
  };

  struct FaceEntry {
    std::vector<std::size_t> zeroed;
    std::string verdict;
    std::uint64_t cells_processed = 0;
    std::uint64_t cells_pruned = 0;
    std::uint64_t unresolved = 0;
    bool empty_domain = false;
    bool budget_exhausted = false;

    bool operator==(const FaceEntry&) const = default;
  };

  std::vector<int> a;
  std::vector<int> b;
  int n = 0;
  std::size_t k = 0;

  double alpha = 0.0;
  double tau = 0.0;
  double epsilon = 0.0;
  double slack = 0.0;
  std::uint64_t max_cells = 0;
  unsigned workers = 1;

  std::string verdict;
  std::optional<std::vector<double>> witness;
  std::optional<std::vector<std::size_t>> face;
  Stats stats;
  std::vector<FaceEntry> faces;

  bool operator==(const RunReport&) const = default;
};

RunReport make_report(const CountVector& r_a, const CountVector& r_b,
                      const DecisionConfig& config, const Decision& decision,
                      double wall_time_ms);

std::string serialize_report(const RunReport& report, int indent = 2);

/// Throws InvalidArgument on malformed input.
RunReport parse_report(std::string_view json);

std::string format_report_text(const RunReport& report);

/// One JSON object per line: face, cell id, parent id, vertices, bounds and
/// action.
void write_trace(const std::vector<TraceEntry>& trace, std::ostream& out);

}  // namespace mvc
