// Command-line front end. Talks to the library through the C API only.
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvc/mvc.h"

namespace {

// Exit codes: decide maps verdicts to 0..2, failures start at 3.
constexpr int kExitUsage = 3;
constexpr int kExitError = 4;

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      if constexpr (std::is_same_v<T, int>)
        out.push_back(std::stoi(item, &used));
      else
        out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw CLI::ValidationError(what, "expected a comma-separated list, got '" + text + "'");
  }
  if (out.empty()) throw CLI::ValidationError(what, "empty list");
  return out;
}

int fail(mvc_status status) {
  std::fprintf(stderr, "error: %s: %s\n", mvc_status_string(status), mvc_last_error());
  return kExitError;
}

struct Pair {
  std::vector<int> a;
  std::vector<int> b;
};

Pair parse_pair(const std::string& a, const std::string& b) {
  Pair p{parse_list<int>(a, "--a"), parse_list<int>(b, "--b")};
  if (p.a.size() != p.b.size())
    throw CLI::ValidationError("--b", "outcomes must have the same number of categories");
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified intersection of exact multinomial confidence regions"};
  app.require_subcommand(1);

  std::string a_text, b_text, outcome_text, p_text, format = "text", trace_path;
  std::string method = "mvc", out_path, svg_path, suite = "random";
  mvc_config config;
  mvc_config_init(&config);
  mvc_bench_config bench;
  mvc_bench_config_init(&bench);
  double grid_alpha = 0.05;
  int resolution = 101;

  auto* decide = app.add_subcommand("decide", "Decide whether the two regions intersect");
  decide->add_option("--a", a_text, "First outcome, e.g. 1,6,1")->required();
  decide->add_option("--b", b_text, "Second outcome")->required();
  decide->add_option("--alpha", config.alpha, "Significance level")->capture_default_str();
  decide->add_option("--tau", config.tau, "Domain tolerance")->capture_default_str();
  decide->add_option("--eps", config.epsilon, "Minimum cell diameter")->capture_default_str();
  decide->add_option("--max-cells", config.max_cells, "Cell budget")->capture_default_str();
  decide->add_option("--workers", config.workers, "Worker threads")->capture_default_str();
  decide->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  decide->add_option("--trace", trace_path, "Write a JSON-lines refinement trace");

  auto* pvalue = app.add_subcommand("pvalue", "Exact p-value of an outcome at a parameter");
  pvalue->add_option("--outcome", outcome_text, "Observed counts")->required();
  pvalue->add_option("--p", p_text, "Probability vector")->required();

  auto* grid = app.add_subcommand("grid", "Region membership over a barycentric grid");
  grid->add_option("--a", a_text, "First outcome")->required();
  grid->add_option("--b", b_text, "Second outcome")->required();
  grid->add_option("--alpha", grid_alpha, "Significance level")->capture_default_str();
  grid->add_option("--resolution", resolution, "Grid points per axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  grid->add_option("--method", method, "Region definition")
      ->check(CLI::IsMember({"mvc", "chisq"}))
      ->capture_default_str();
  grid->add_option("--out", out_path, "CSV output path")->required();
  grid->add_option("--svg", svg_path, "Ternary SVG output path (k = 3)");

  auto* bench_cmd = app.add_subcommand("bench", "Compare verdicts with a dense-grid oracle");
  bench_cmd->add_option("--suite", suite, "Instance suite")
      ->check(CLI::IsMember({"random"}))
      ->capture_default_str();
  bench_cmd->add_option("--count", bench.count, "Number of instances")->capture_default_str();
  bench_cmd->add_option("--n-max", bench.n_max, "Largest sample size")->capture_default_str();
  bench_cmd->add_option("--k", bench.k, "Number of categories")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Generator seed")->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--oracle-resolution", bench.oracle_resolution,
                        "Oracle grid subdivisions")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*decide) {
      const Pair pair = parse_pair(a_text, b_text);
      config.record_trace = trace_path.empty() ? 0 : 1;
      mvc_decision* d = nullptr;
      if (const mvc_status s = mvc_decide(pair.a.data(), pair.b.data(), pair.a.size(), &config, &d))
        return fail(s);
      std::fputs(format == "json" ? mvc_decision_report_json(d) : mvc_decision_report_text(d),
                 stdout);
      if (format == "json") std::fputc('\n', stdout);
      int code = static_cast<int>(mvc_decision_verdict(d));
      if (!trace_path.empty()) {
        if (const mvc_status s = mvc_decision_write_trace(d, trace_path.c_str()))
          code = fail(s);
      }
      mvc_decision_free(d);
      return code;
    }
    if (*pvalue) {
      const auto counts = parse_list<int>(outcome_text, "--outcome");
      const auto p = parse_list<double>(p_text, "--p");
      if (counts.size() != p.size())
        throw CLI::ValidationError("--p", "length differs from --outcome");
      double value = 0.0;
      if (const mvc_status s = mvc_exact_p_value(counts.data(), p.data(), counts.size(), &value))
        return fail(s);
      std::printf("%.12f\n", value);
      return 0;
    }
    if (*grid) {
      const Pair pair = parse_pair(a_text, b_text);
      uint64_t both = 0;
      if (const mvc_status s = mvc_write_grid(
              pair.a.data(), pair.b.data(), pair.a.size(), grid_alpha, resolution,
              method == "chisq" ? MVC_GRID_CHISQ : MVC_GRID_MVC, out_path.c_str(),
              svg_path.empty() ? nullptr : svg_path.c_str(), &both))
        return fail(s);
      std::printf("points in both regions: %llu\n", static_cast<unsigned long long>(both));
      return 0;
    }
    if (*bench_cmd) {
      mvc_bench* b = nullptr;
      if (const mvc_status s = mvc_bench_run(&bench, &b)) return fail(s);
      std::fputs(mvc_bench_table(b), stdout);
      std::printf("wall time %.1f ms\n", mvc_bench_wall_time_ms(b));
      const int code = mvc_bench_violations(b) == 0 ? 0 : 1;
      mvc_bench_free(b);
      return code;
    }
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
