#include "mvc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <cstdio>
#include <random>
#include <sstream>

namespace mvc {

namespace {

// Uniform composition of n into k parts via stars and bars.
CountVector random_composition(int n, std::size_t k, std::mt19937_64& rng) {
  std::vector<int> slots(static_cast<std::size_t>(n) + k - 1);
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<int> bars(slots.begin(), slots.begin() + static_cast<long>(k - 1));
  std::sort(bars.begin(), bars.end());
  std::vector<int> counts;
  int prev = -1;
  for (int bar : bars) {
    counts.push_back(bar - prev - 1);
    prev = bar;
  }
  counts.push_back(n + static_cast<int>(k) - 1 - prev - 1);
  return CountVector(std::move(counts));
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::vector<std::pair<CountVector, CountVector>> random_instances(std::size_t count,
                                                                  int n_max, std::size_t k,
                                                                  std::uint64_t seed) {
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 2");
  if (k < 2) throw Error(ErrorCode::InvalidDimension, "k must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<CountVector, CountVector>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - 1));
    CountVector a = random_composition(n, k, rng);
    CountVector b = random_composition(n, k, rng);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.alphas.empty()) throw Error(ErrorCode::InvalidArgument, "no alpha levels");
  const auto start = std::chrono::steady_clock::now();
  BenchReport report;
  const auto instances = random_instances(config.count, config.n_max, config.k, config.seed);
  std::uint64_t total_cells = 0, hits = 0, lookups = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& [a, b] = instances[i];
    DecisionConfig dc;
    dc.alpha = config.alphas[i % config.alphas.size()];
    dc.tau = config.tau;
    dc.epsilon = config.epsilon;
    dc.max_cells = config.max_cells;
    dc.workers = config.workers;
    const Decision d = decide_with_faces(a, b, dc);

    BenchRow row;
    row.a.assign(a.counts().begin(), a.counts().end());
    row.b.assign(b.counts().begin(), b.counts().end());
    row.alpha = dc.alpha;
    row.verdict = d.verdict;
    row.oracle = oracle_max_min_pvalue(a, b, config.oracle_resolution).value;
    row.cells = d.cells_processed;
    row.unresolved = d.unresolved_count;
    row.cache_hits = d.cache_hits;
    row.cache_misses = d.cache_misses;
    if (d.verdict == Verdict::Intersect)
      row.consistent = row.oracle >= dc.alpha;
    else if (d.verdict == Verdict::Disjoint)
      row.consistent = row.oracle < dc.alpha;

    if (d.verdict == Verdict::Uncertain) {
      ++report.uncertain;
    } else {
      ++report.decided;
      (row.consistent ? report.agreements : report.violations) += 1;
    }
    total_cells += row.cells;
    hits += row.cache_hits;
    lookups += row.cache_hits + row.cache_misses;
    report.rows.push_back(std::move(row));
  }
  if (!report.rows.empty())
    report.mean_cells = static_cast<double>(total_cells) / static_cast<double>(report.rows.size());
  report.cache_hit_rate = lookups ? static_cast<double>(hits) / static_cast<double>(lookups) : 0.0;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%5s %-16s %-16s %6s %-10s %10s %5s %10s %10s\n", "#", "A",
                "B", "alpha", "verdict", "oracle", "ok", "cells", "unresolved");
  out << buf;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    std::snprintf(buf, sizeof buf, "%5zu %-16s %-16s %6.3g %-10s %10.6f %5s %10llu %10llu\n", i,
                  join(r.a).c_str(), join(r.b).c_str(), r.alpha, to_string(r.verdict), r.oracle,
                  r.consistent ? "yes" : "NO", static_cast<unsigned long long>(r.cells),
                  static_cast<unsigned long long>(r.unresolved));
    out << buf;
  }
  const double agreement =
      report.decided ? 100.0 * static_cast<double>(report.agreements) / report.decided : 100.0;
  const double uncertain_rate =
      report.rows.empty() ? 0.0 : 100.0 * static_cast<double>(report.uncertain) / report.rows.size();
  std::snprintf(buf, sizeof buf,
                "instances %zu  decided %zu  agreement %.1f%%  violations %zu  uncertain %.1f%%\n"
                "mean cells %.1f  cache hit rate %.3f\n",
                report.rows.size(), report.decided, agreement, report.violations, uncertain_rate,
                report.mean_cells, report.cache_hit_rate);
  out << buf;
  return out.str();
}

}  // namespace mvc
