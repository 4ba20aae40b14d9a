#include "mvc/mvc.h"

#include <chrono>
#include <algorithm>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "mvc/baseline.hpp"
#include "mvc/bench.hpp"
#include "mvc/engine.hpp"
#include "mvc/grid.hpp"
#include "mvc/report.hpp"

struct mvc_decision {
  mvc::Decision decision;
  std::size_t k = 0;
  std::string json;
  std::string text;
};

struct mvc_bench {
  mvc::BenchReport report;
  std::string table;
};

namespace {

thread_local std::string g_last_error;

mvc_status status_of(mvc::ErrorCode code) {
  switch (code) {
    case mvc::ErrorCode::InvalidArgument: return MVC_ERR_INVALID_ARGUMENT;
    case mvc::ErrorCode::InvalidDimension: return MVC_ERR_INVALID_DIMENSION;
    case mvc::ErrorCode::DimensionMismatch: return MVC_ERR_DIMENSION_MISMATCH;
    case mvc::ErrorCode::BudgetExceeded: return MVC_ERR_BUDGET_EXCEEDED;
    case mvc::ErrorCode::InvalidTolerance: return MVC_ERR_INVALID_TOLERANCE;
    case mvc::ErrorCode::BoundaryPoint: return MVC_ERR_BOUNDARY_POINT;
    case mvc::ErrorCode::DegenerateCell: return MVC_ERR_DEGENERATE_CELL;
    case mvc::ErrorCode::DegenerateSlice: return MVC_ERR_DEGENERATE_SLICE;
    case mvc::ErrorCode::EmptyDomain: return MVC_ERR_EMPTY_DOMAIN;
    case mvc::ErrorCode::Io: return MVC_ERR_IO;
  }
  return MVC_ERR_INTERNAL;
}

template <typename F>
mvc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return MVC_OK;
  } catch (const mvc::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MVC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MVC_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw mvc::Error(mvc::ErrorCode::InvalidArgument, what);
}

mvc::CountVector counts_of(const int* c, std::size_t k) {
  require(c != nullptr, "null count array");
  return mvc::CountVector(std::vector<int>(c, c + k));
}

mvc_verdict verdict_of(mvc::Verdict v) {
  switch (v) {
    case mvc::Verdict::Intersect: return MVC_INTERSECT;
    case mvc::Verdict::Disjoint: return MVC_DISJOINT;
    case mvc::Verdict::Uncertain: break;
  }
  return MVC_UNCERTAIN;
}

}  // namespace

extern "C" {

const char* mvc_last_error(void) { return g_last_error.c_str(); }

const char* mvc_status_string(mvc_status status) {
  switch (status) {
    case MVC_OK: return "ok";
    case MVC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MVC_ERR_INVALID_DIMENSION: return "invalid dimension";
    case MVC_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case MVC_ERR_BUDGET_EXCEEDED: return "budget exceeded";
    case MVC_ERR_INVALID_TOLERANCE: return "invalid tolerance";
    case MVC_ERR_BOUNDARY_POINT: return "boundary point";
    case MVC_ERR_DEGENERATE_CELL: return "degenerate cell";
    case MVC_ERR_DEGENERATE_SLICE: return "degenerate slice";
    case MVC_ERR_EMPTY_DOMAIN: return "empty domain";
    case MVC_ERR_IO: return "i/o error";
    case MVC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mvc_verdict_string(mvc_verdict verdict) {
  switch (verdict) {
    case MVC_INTERSECT: return mvc::to_string(mvc::Verdict::Intersect);
    case MVC_DISJOINT: return mvc::to_string(mvc::Verdict::Disjoint);
    case MVC_UNCERTAIN: return mvc::to_string(mvc::Verdict::Uncertain);
  }
  return "UNKNOWN";
}

void mvc_config_init(mvc_config* config) {
  if (!config) return;
  const mvc::DecisionConfig d;
  config->alpha = d.alpha;
  config->tau = d.tau;
  config->epsilon = d.epsilon;
  config->max_cells = d.max_cells;
  config->slack = d.slack;
  config->workers = d.workers;
  config->record_trace = d.record_trace ? 1 : 0;
}

mvc_status mvc_exact_p_value(const int* counts, const double* p, size_t k, double* out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const mvc::CountVector r = counts_of(counts, k);
    const mvc::SimplexPoint point(std::vector<double>(p, p + k));
    const auto table = mvc::enumerate_outcomes(r.n(), r.k());
    *out = mvc::exact_p_value(r, point, table);
  });
}

mvc_status mvc_decide(const int* a, const int* b, size_t k, const mvc_config* config,
                      mvc_decision** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    const mvc::CountVector ra = counts_of(a, k);
    const mvc::CountVector rb = counts_of(b, k);
    mvc::DecisionConfig dc;
    dc.alpha = config->alpha;
    dc.tau = config->tau;
    dc.epsilon = config->epsilon;
    dc.max_cells = config->max_cells;
    dc.slack = config->slack;
    dc.workers = config->workers;
    dc.record_trace = config->record_trace != 0;
    const auto start = std::chrono::steady_clock::now();
    auto result = std::make_unique<mvc_decision>();
    result->decision = mvc::decide_with_faces(ra, rb, dc);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    result->k = k;
    const auto report = mvc::make_report(ra, rb, dc, result->decision, ms);
    result->json = mvc::serialize_report(report);
    result->text = mvc::format_report_text(report);
    *out = result.release();
  });
}

void mvc_decision_free(mvc_decision* decision) { delete decision; }

mvc_verdict mvc_decision_verdict(const mvc_decision* decision) {
  return decision ? verdict_of(decision->decision.verdict) : MVC_UNCERTAIN;
}

int mvc_decision_witness(const mvc_decision* decision, double* out) {
  if (!decision || !out || !decision->decision.witness) return 0;
  const auto probs = decision->decision.witness->probs();
  std::copy(probs.begin(), probs.end(), out);
  return 1;
}

uint64_t mvc_decision_cells(const mvc_decision* decision) {
  return decision ? decision->decision.cells_processed : 0;
}

uint64_t mvc_decision_unresolved(const mvc_decision* decision) {
  return decision ? decision->decision.unresolved_count : 0;
}

const char* mvc_decision_report_json(const mvc_decision* decision) {
  return decision ? decision->json.c_str() : "";
}

const char* mvc_decision_report_text(const mvc_decision* decision) {
  return decision ? decision->text.c_str() : "";
}

mvc_status mvc_decision_write_trace(const mvc_decision* decision, const char* path) {
  return guarded([&] {
    require(decision != nullptr && path != nullptr, "null argument");
    std::ofstream out(path);
    if (!out) throw mvc::Error(mvc::ErrorCode::Io, std::string("cannot open ") + path);
    mvc::write_trace(decision->decision.trace, out);
  });
}

mvc_status mvc_oracle_max_min(const int* a, const int* b, size_t k, int resolution,
                              double* value, double* argmax) {
  return guarded([&] {
    require(value != nullptr, "null argument");
    const auto result = mvc::oracle_max_min_pvalue(counts_of(a, k), counts_of(b, k), resolution);
    *value = result.value;
    if (argmax) std::copy(result.argmax.probs().begin(), result.argmax.probs().end(), argmax);
  });
}

mvc_status mvc_wilks_intersect(const int* a, const int* b, size_t k, double alpha,
                               int resolution, int* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = mvc::wilks_intersect(counts_of(a, k), counts_of(b, k), alpha, resolution) ? 1 : 0;
  });
}

mvc_status mvc_chisq_quantile(int df, double prob, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = mvc::chisq_quantile(df, prob);
  });
}

mvc_status mvc_write_grid(const int* a, const int* b, size_t k, double alpha,
                          int points_per_axis, mvc_grid_method method, const char* csv_path,
                          const char* svg_path, uint64_t* both_count) {
  return guarded([&] {
    require(csv_path != nullptr, "null csv path");
    const auto rows = mvc::membership_grid(
        counts_of(a, k), counts_of(b, k), alpha, points_per_axis,
        method == MVC_GRID_CHISQ ? mvc::GridMethod::ChiSquare : mvc::GridMethod::Mvc);
    {
      std::ofstream out(csv_path);
      if (!out) throw mvc::Error(mvc::ErrorCode::Io, std::string("cannot open ") + csv_path);
      mvc::write_grid_csv(rows, out);
    }
    if (svg_path) {
      std::ofstream out(svg_path);
      if (!out) throw mvc::Error(mvc::ErrorCode::Io, std::string("cannot open ") + svg_path);
      mvc::write_grid_svg(rows, points_per_axis, out);
    }
    if (both_count) {
      *both_count = 0;
      for (const auto& row : rows) *both_count += (row.in_a && row.in_b) ? 1 : 0;
    }
  });
}

void mvc_bench_config_init(mvc_bench_config* config) {
  if (!config) return;
  const mvc::BenchConfig d;
  config->count = d.count;
  config->n_max = d.n_max;
  config->k = d.k;
  config->seed = d.seed;
  config->tau = d.tau;
  config->epsilon = d.epsilon;
  config->max_cells = d.max_cells;
  config->workers = d.workers;
  config->oracle_resolution = d.oracle_resolution;
}

mvc_status mvc_bench_run(const mvc_bench_config* config, mvc_bench** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    mvc::BenchConfig bc;
    bc.count = config->count;
    bc.n_max = config->n_max;
    bc.k = config->k;
    bc.seed = config->seed;
    bc.tau = config->tau;
    bc.epsilon = config->epsilon;
    bc.max_cells = config->max_cells;
    bc.workers = config->workers;
    bc.oracle_resolution = config->oracle_resolution;
    auto result = std::make_unique<mvc_bench>();
    result->report = mvc::run_bench(bc);
    result->table = mvc::format_bench_table(result->report);
    *out = result.release();
  });
}

void mvc_bench_free(mvc_bench* bench) { delete bench; }

const char* mvc_bench_table(const mvc_bench* bench) { return bench ? bench->table.c_str() : ""; }

size_t mvc_bench_violations(const mvc_bench* bench) {
  return bench ? bench->report.violations : 0;
}

double mvc_bench_wall_time_ms(const mvc_bench* bench) {
  return bench ? bench->report.wall_time_ms : 0.0;
}

}  // extern "C"
