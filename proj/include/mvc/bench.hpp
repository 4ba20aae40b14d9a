#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvc/engine.hpp"

namespace mvc {

struct BenchConfig {
  std::size_t count = 100;
  int n_max = 10;
  std::size_t k = 3;
  std::uint64_t seed = 42;
  std::vector<double> alphas{0.05, 0.1, 0.17, 0.3};
  double tau = 1e-3;
  double epsilon = 1e-3;
  std::uint64_t max_cells = 2'000'000;
  unsigned workers = 1;
  int oracle_resolution = 200;
};

struct BenchRow {
  std::vector<int> a;
  std::vector<int> b;
  double alpha = 0.0;
  Verdict verdict = Verdict::Uncertain;
  double oracle = 0.0;
  /// INTERSECT with oracle >= alpha, DISJOINT with oracle < alpha, or
  /// UNCERTAIN.
  bool consistent = true;
  std::uint64_t cells = 0;
  std::uint64_t unresolved = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t decided = 0;
  std::size_t agreements = 0;
  std::size_t violations = 0;
  std::size_t uncertain = 0;
  double mean_cells = 0.0;
  double cache_hit_rate = 0.0;
  double wall_time_ms = 0.0;
};

/// Two outcomes drawn uniformly from the compositions of a random n in
/// [2, n_max], per instance, from a seeded generator.
std::vector<std::pair<CountVector, CountVector>> random_instances(std::size_t count,
                                                                  int n_max, std::size_t k,
                                                                  std::uint64_t seed);

BenchReport run_bench(const BenchConfig& config);

/// Per-instance table and summary. Excludes timing, so identical seeds give
/// identical text.
std::string format_bench_table(const BenchReport& report);

}  // namespace mvc
