#include "mvc/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mvc {

using nlohmann::json;

namespace {

std::vector<std::size_t> one_based(const std::vector<std::size_t>& zero_based) {
  std::vector<std::size_t> out;
  for (std::size_t i : zero_based) out.push_back(i + 1);
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

RunReport make_report(const CountVector& r_a, const CountVector& r_b,
                      const DecisionConfig& config, const Decision& decision,
                      double wall_time_ms) {
  RunReport r;
  r.a.assign(r_a.counts().begin(), r_a.counts().end());
  r.b.assign(r_b.counts().begin(), r_b.counts().end());
  r.n = r_a.n();
  r.k = r_a.k();
  r.alpha = config.alpha;
  r.tau = config.tau;
  r.epsilon = config.epsilon;
  r.slack = config.slack;
  r.max_cells = config.max_cells;
  r.workers = config.workers;
  r.verdict = to_string(decision.verdict);
  if (decision.witness)
    r.witness = std::vector<double>(decision.witness->probs().begin(),
                                    decision.witness->probs().end());
  if (decision.face) r.face = one_based(*decision.face);
  r.stats.cells_processed = decision.cells_processed;
  r.stats.cells_pruned = decision.cells_pruned;
  r.stats.unresolved = decision.unresolved_count;
  r.stats.cache_hits = decision.cache_hits;
  r.stats.cache_misses = decision.cache_misses;
  r.stats.budget_exhausted = decision.budget_exhausted;
  r.stats.wall_time_ms = wall_time_ms;
  for (const auto& f : decision.faces)
    r.faces.push_back({one_based(f.zeroed), to_string(f.verdict), f.cells_processed,
                       f.cells_pruned, f.unresolved, f.empty_domain, f.budget_exhausted});
  return r;
}

std::string serialize_report(const RunReport& r, int indent) {
  json j;
  j["schema"] = kReportSchema;
  j["instance"] = {{"a", r.a}, {"b", r.b}, {"n", r.n}, {"k", r.k}};
  j["config"] = {{"alpha", r.alpha},         {"tau", r.tau},
                 {"epsilon", r.epsilon},     {"slack", r.slack},
                 {"max_cells", r.max_cells}, {"workers", r.workers}};
  j["verdict"] = r.verdict;
  j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  j["face"] = r.face ? json(*r.face) : json(nullptr);
  j["stats"] = {{"cells_processed", r.stats.cells_processed},
                {"cells_pruned", r.stats.cells_pruned},
                {"unresolved", r.stats.unresolved},
                {"cache_hits", r.stats.cache_hits},
                {"cache_misses", r.stats.cache_misses},
                {"budget_exhausted", r.stats.budget_exhausted},
                {"wall_time_ms", r.stats.wall_time_ms}};
  json faces = json::array();
  for (const auto& f : r.faces)
    faces.push_back({{"zeroed", f.zeroed},
                     {"verdict", f.verdict},
                     {"cells_processed", f.cells_processed},
                     {"cells_pruned", f.cells_pruned},
                     {"unresolved", f.unresolved},
                     {"empty_domain", f.empty_domain},
                     {"budget_exhausted", f.budget_exhausted}});
  j["faces"] = std::move(faces);
  return j.dump(indent);
}

RunReport parse_report(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("schema").get<std::string>() != kReportSchema)
      throw Error(ErrorCode::InvalidArgument, "unknown report schema");
    RunReport r;
    const auto& inst = j.at("instance");
    inst.at("a").get_to(r.a);
    inst.at("b").get_to(r.b);
    inst.at("n").get_to(r.n);
    inst.at("k").get_to(r.k);
    const auto& cfg = j.at("config");
    cfg.at("alpha").get_to(r.alpha);
    cfg.at("tau").get_to(r.tau);
    cfg.at("epsilon").get_to(r.epsilon);
    cfg.at("slack").get_to(r.slack);
    cfg.at("max_cells").get_to(r.max_cells);
    cfg.at("workers").get_to(r.workers);
    j.at("verdict").get_to(r.verdict);
    if (!j.at("witness").is_null()) r.witness = j.at("witness").get<std::vector<double>>();
    if (!j.at("face").is_null()) r.face = j.at("face").get<std::vector<std::size_t>>();
    const auto& st = j.at("stats");
    st.at("cells_processed").get_to(r.stats.cells_processed);
    st.at("cells_pruned").get_to(r.stats.cells_pruned);
    st.at("unresolved").get_to(r.stats.unresolved);
    st.at("cache_hits").get_to(r.stats.cache_hits);
    st.at("cache_misses").get_to(r.stats.cache_misses);
    st.at("budget_exhausted").get_to(r.stats.budget_exhausted);
    st.at("wall_time_ms").get_to(r.stats.wall_time_ms);
    for (const auto& f : j.at("faces")) {
      RunReport::FaceEntry e;
      f.at("zeroed").get_to(e.zeroed);
      f.at("verdict").get_to(e.verdict);
      f.at("cells_processed").get_to(e.cells_processed);
      f.at("cells_pruned").get_to(e.cells_pruned);
      f.at("unresolved").get_to(e.unresolved);
      f.at("empty_domain").get_to(e.empty_domain);
      f.at("budget_exhausted").get_to(e.budget_exhausted);
      r.faces.push_back(std::move(e));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed report: ") + e.what());
  }
}

std::string format_report_text(const RunReport& r) {
  std::ostringstream out;
  char buf[64];
  out << "verdict: " << r.verdict << "\n";
  out << "instance: A=[" << join(r.a) << "] B=[" << join(r.b) << "] n=" << r.n
      << " k=" << r.k << "\n";
  std::snprintf(buf, sizeof buf, "alpha=%g tau=%g eps=%g", r.alpha, r.tau, r.epsilon);
  out << "config: " << buf << " max_cells=" << r.max_cells << " workers=" << r.workers
      << "\n";
  if (r.witness) {
    out << "witness:";
    for (double x : *r.witness) {
      std::snprintf(buf, sizeof buf, " %.12g", x);
      out << buf;
    }
    out << "\n";
  }
  if (r.face) {
    out << "face (zeroed categories):";
    if (r.face->empty()) out << " none";
    for (std::size_t c : *r.face) out << " " << c;
    out << "\n";
  }
  std::snprintf(buf, sizeof buf, "%.1f ms", r.stats.wall_time_ms);
  out << "cells: " << r.stats.cells_processed << " processed, " << r.stats.cells_pruned
      << " pruned, " << r.stats.unresolved << " unresolved; cache " << r.stats.cache_hits
      << " hits / " << r.stats.cache_misses << " misses; " << buf
      << (r.stats.budget_exhausted ? " (budget exhausted)" : "") << "\n";
  for (const auto& f : r.faces) {
    out << "  face {";
    for (std::size_t i = 0; i < f.zeroed.size(); ++i) out << (i ? "," : "") << f.zeroed[i];
    out << "}: " << f.verdict << ", " << f.cells_processed << " cells"
        << (f.empty_domain ? " (empty domain)" : "") << "\n";
  }
  return out.str();
}

void write_trace(const std::vector<TraceEntry>& trace, std::ostream& out) {
  for (const auto& e : trace) {
    json vertices = json::array();
    for (const auto& v : e.vertices) vertices.push_back(v.coords);
    json line = {{"face", e.face},           {"cell", e.cell_id},
                 {"parent", e.parent_id},    {"vertices", std::move(vertices)},
                 {"min_lower", e.min_lower}, {"min_upper", e.min_upper},
                 {"action", to_string(e.action)}};
    out << line.dump() << "\n";
  }
  if (!out) throw Error(ErrorCode::Io, "failed to write trace");
}

}  // namespace mvc
