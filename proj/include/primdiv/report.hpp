#pragma once

// JSON and CSV persistence for campaign reports and single values. Output
// contains no timing or worker count, so equal configurations give equal
// bytes.

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "primdiv/cyclotomic.hpp"
#include "primdiv/sieve.hpp"

namespace primdiv {

using json = nlohmann::ordered_json;

inline constexpr int report_schema = 1;

inline json to_json(const CriterionValue& v) {
  json j{{"n", v.n},
         {"criterion", std::string(to_string(v.name))},
         {"lhs", v.lhs},
         {"threshold", v.threshold},
         {"holds", v.holds},
         {"guard_escalated", v.guard_escalated},
         {"undecided", v.undecided}};
  if (v.minimizer) j["minimizer"] = *v.minimizer;
  return j;
}

inline CriterionValue criterion_value_from_json(const json& j) {
  CriterionValue v;
  v.n = j.at("n").get<std::uint64_t>();
  auto c = criterion_from_string(j.at("criterion").get<std::string>());
  if (!c) throw std::runtime_error("report: unknown criterion " + j.at("criterion").dump());
  v.name = *c;
  v.lhs = j.at("lhs").get<double>();
  v.threshold = j.at("threshold").get<double>();
  v.holds = j.at("holds").get<bool>();
  v.guard_escalated = j.at("guard_escalated").get<bool>();
  v.undecided = j.at("undecided").get<bool>();
  if (j.contains("minimizer")) v.minimizer = j.at("minimizer").get<std::uint64_t>();
  return v;
}

inline json to_json(const CheckVerdict& v) {
  json margins = json::array();
  for (const auto& c : v.values) margins.push_back(to_json(c));
  return {{"n", v.n},
          {"omega", v.omega},
          {"passed_by", std::string(to_string(v.passed_by))},
          {"half_applicable", v.half_applicable},
          {"margins", std::move(margins)}};
}

inline CheckVerdict verdict_from_json(const json& j) {
  CheckVerdict v;
  v.n = j.at("n").get<std::uint64_t>();
  v.omega = j.at("omega").get<unsigned>();
  auto p = passed_by_from_string(j.at("passed_by").get<std::string>());
  if (!p) throw std::runtime_error("report: unknown passed_by " + j.at("passed_by").dump());
  v.passed_by = *p;
  v.half_applicable = j.at("half_applicable").get<bool>();
  for (const auto& m : j.at("margins")) v.values.push_back(criterion_value_from_json(m));
  return v;
}

inline json to_json(const CampaignConfig& c) {
  json bounds = json::object();
  for (unsigned k = 1; k <= 8; ++k) bounds[std::to_string(k)] = c.bound(k);
  json overrides = json::object();
  for (const auto& [k, b] : c.class_bounds) overrides[std::to_string(k)] = b;
  return {{"mode", std::string(to_string(c.mode))},
          {"guard", c.guard.relative_guard},
          {"precision_bits", c.guard.precision_bits},
          {"near_margin", c.near_margin},
          {"class_bounds", std::move(bounds)},
          {"overrides", std::move(overrides)}};
}

inline CampaignConfig config_from_json(const json& j) {
  CampaignConfig c;
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "paper")
    c.mode = CascadeMode::paper;
  else if (mode == "maximal")
    c.mode = CascadeMode::maximal;
  else
    throw std::runtime_error("report: unknown mode " + mode);
  c.guard.relative_guard = j.at("guard").get<double>();
  c.guard.precision_bits = j.at("precision_bits").get<unsigned>();
  c.near_margin = j.at("near_margin").get<double>();
  for (const auto& [k, b] : j.at("overrides").items()) {
    const unsigned kk = static_cast<unsigned>(std::stoul(k));
    if (kk < 1 || kk > 8) throw std::runtime_error("report: class bound for omega " + k);
    c.class_bounds[kk] = b.get<std::uint64_t>();
  }
  return c;
}

inline json to_json(const ClosureCertificate& c) {
  return {{"root", c.root}, {"from", c.from}, {"upper", c.upper}, {"certified", c.certified}, {"intervals", c.intervals}};
}

inline ClosureCertificate closure_from_json(const json& j) {
  ClosureCertificate c;
  c.root = j.at("root").get<double>();
  c.from = j.at("from").get<std::uint64_t>();
  c.upper = j.at("upper").get<std::uint64_t>();
  c.certified = j.at("certified").get<bool>();
  c.intervals = j.at("intervals").get<std::uint64_t>();
  return c;
}

inline json to_json(const ClassReport& r) {
  json passed = json::object();
  for (const auto& [k, v] : r.passed_by) passed[k] = v;
  json closures = json::array(), failing = json::array(), near = json::array();
  for (const auto& c : r.closures) closures.push_back(to_json(c));
  for (const auto& v : r.failing) failing.push_back(to_json(v));
  for (const auto& v : r.near_margin) near.push_back(to_json(v));
  return {{"omega", r.omega},
          {"n_k", r.n_k},
          {"scan_bound", r.scan_bound},
          {"candidates", r.candidates},
          {"candidates_below_n_k", r.candidates_below},
          {"boundary_flag", r.boundary_flag},
          {"scanned", r.scanned},
          {"passed_by", std::move(passed)},
          {"max_failing", r.max_failing ? json(*r.max_failing) : json(nullptr)},
          {"closed", r.closed},
          {"closures", std::move(closures)},
          {"rescued_beyond_paper", r.rescued_beyond_paper},
          {"failing", std::move(failing)},
          {"near_margin", std::move(near)}};
}

inline ClassReport class_from_json(const json& j) {
  ClassReport r;
  r.omega = j.at("omega").get<unsigned>();
  r.n_k = j.at("n_k").get<std::uint64_t>();
  r.scan_bound = j.at("scan_bound").get<std::uint64_t>();
  r.candidates = j.at("candidates").get<std::uint64_t>();
  r.candidates_below = j.at("candidates_below_n_k").get<std::uint64_t>();
  r.boundary_flag = j.at("boundary_flag").get<bool>();
  r.scanned = j.at("scanned").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("passed_by").items()) r.passed_by[k] = v.get<std::uint64_t>();
  if (!j.at("max_failing").is_null()) r.max_failing = j.at("max_failing").get<std::uint64_t>();
  r.closed = j.at("closed").get<bool>();
  for (const auto& c : j.at("closures")) r.closures.push_back(closure_from_json(c));
  r.rescued_beyond_paper = j.at("rescued_beyond_paper").get<std::vector<std::uint64_t>>();
  for (const auto& v : j.at("failing")) r.failing.push_back(verdict_from_json(v));
  for (const auto& v : j.at("near_margin")) r.near_margin.push_back(verdict_from_json(v));
  return r;
}

inline json to_json(const CampaignReport& rep) {
  const auto& s = rep.summary;
  json classes = json::array();
  for (const auto& c : rep.classes) classes.push_back(to_json(c));
  return {{"schema", rep.schema},
          {"config", to_json(rep.config)},
          {"classes", std::move(classes)},
          {"summary",
           {{"global_max_failing", s.global_max_failing ? json(*s.global_max_failing) : json(nullptr)},
            {"coverage_complete", s.coverage_complete},
            {"reproduced", s.reproduced},
            {"global_closure", to_json(s.global_closure)},
            {"f_evaluations", s.f_evaluations},
            {"f_minimizer_r1", s.f_minimizer_r1},
            {"diagnostics", s.diagnostics}}}};
}

inline CampaignReport report_from_json(const json& j) {
  CampaignReport rep;
  rep.schema = j.at("schema").get<int>();
  if (rep.schema != report_schema) throw std::runtime_error("report: unsupported schema " + std::to_string(rep.schema));
  rep.config = config_from_json(j.at("config"));
  for (const auto& c : j.at("classes")) rep.classes.push_back(class_from_json(c));
  const auto& s = j.at("summary");
  if (!s.at("global_max_failing").is_null()) rep.summary.global_max_failing = s.at("global_max_failing").get<std::uint64_t>();
  rep.summary.coverage_complete = s.at("coverage_complete").get<bool>();
  rep.summary.reproduced = s.at("reproduced").get<bool>();
  rep.summary.global_closure = criterion_value_from_json(s.at("global_closure"));
  rep.summary.f_evaluations = s.at("f_evaluations").get<std::uint64_t>();
  rep.summary.f_minimizer_r1 = s.at("f_minimizer_r1").get<std::uint64_t>();
  rep.summary.diagnostics = s.at("diagnostics").get<std::vector<std::string>>();
  return rep;
}

/// Compact serialization followed by a newline; this is the golden format.
inline std::string dump_report(const CampaignReport& rep) { return to_json(rep).dump() + "\n"; }

// ---------------------------------------------------------------------------
// CSV: one row per failing or near-margin n.

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

namespace detail {

// The criterion a row reports: the last one tried for a failing n, the
// tightest passing one otherwise.
inline const CriterionValue* row_criterion(const CheckVerdict& v) {
  if (v.values.empty()) return nullptr;
  if (v.passed_by == PassedBy::NONE) return &v.values.back();
  const CriterionValue* best = nullptr;
  for (const auto& c : v.values)
    if (c.holds && (!best || c.margin() < best->margin())) best = &c;
  return best;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const CampaignReport& rep) {
  os << "n,omega,criterion,lhs,threshold,passed_by\n";
  auto row = [&](const CheckVerdict& v) {
    const CriterionValue* c = detail::row_criterion(v);
    os << v.n << ',' << v.omega << ',' << (c ? to_string(c->name) : "") << ',' << (c ? format_double(c->lhs) : "")
       << ',' << (c ? format_double(c->threshold) : "") << ',' << to_string(v.passed_by) << '\n';
  };
  for (const auto& cr : rep.classes) {
    for (const auto& v : cr.failing) row(v);
    for (const auto& v : cr.near_margin) row(v);
  }
}

}  // namespace primdiv
