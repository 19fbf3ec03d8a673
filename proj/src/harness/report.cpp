#include <sstream>

#include "json.hpp"
#include "qkg/harness.hpp"

namespace qkg {

namespace {

using nlohmann::json;

constexpr const char* kHeader = "#qkg-report 1";

Verdict verdict_from(const std::string& s) {
  for (Verdict v : {Verdict::kExactZero, Verdict::kBoundaryOnly, Verdict::kViolation})
    if (s == verdict_name(v)) return v;
  throw ConfigError("report: unknown verdict " + s);
}

json config_json(const SuiteConfig& c) {
  return {{"type", "config"}, {"suite", c.suite}, {"order", c.order},   {"korder", c.korder},
          {"seed", c.seed},   {"cases", c.cases}, {"reduce", c.reduce}, {"timing", c.timing}};
}

json case_json(const CaseResult& r, bool timing) {
  json j = {{"type", "case"},         {"index", r.index},     {"name", r.name},
            {"inputs", r.inputs},     {"verdict", verdict_name(r.verdict)},
            {"residual_terms", r.residual_terms}, {"offending", r.offending}};
  if (timing) j["millis"] = r.millis;
  return j;
}

}  // namespace

std::string emit_report(const SuiteReport& r) {
  std::ostringstream os;
  os << kHeader << "\n";
  os << config_json(r.config).dump() << "\n";
  for (auto& c : r.cases) os << case_json(c, r.config.timing).dump() << "\n";
  json s = {{"type", "summary"}, {"exact", r.exact}, {"boundary", r.boundary}, {"violations", r.violations}};
  os << s.dump() << "\n";
  return os.str();
}

SuiteReport parse_report(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kHeader) throw ConfigError("report: missing or unsupported header");
  SuiteReport r;
  bool have_config = false, have_summary = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      std::string type = j.at("type");
      if (type == "config") {
        SuiteConfig& c = r.config;
        c.suite = j.at("suite");
        c.order = j.at("order");
        c.korder = j.at("korder");
        c.seed = j.at("seed");
        c.cases = j.at("cases");
        c.reduce = j.at("reduce");
        c.timing = j.at("timing");
        have_config = true;
      } else if (type == "case") {
        CaseResult c;
        c.index = j.at("index");
        c.name = j.at("name");
        c.inputs = j.at("inputs").get<std::vector<std::string>>();
        c.verdict = verdict_from(j.at("verdict"));
        c.residual_terms = j.at("residual_terms");
        c.offending = j.at("offending").get<std::vector<std::string>>();
        if (j.contains("millis")) c.millis = j.at("millis");
        r.cases.push_back(std::move(c));
      } else if (type == "summary") {
        r.exact = j.at("exact");
        r.boundary = j.at("boundary");
        r.violations = j.at("violations");
        have_summary = true;
      } else {
        throw ConfigError("report: unknown line type " + type);
      }
    } catch (const json::exception& e) {
      throw ConfigError(std::string("report: ") + e.what());
    }
  }
  if (!have_config || !have_summary) throw ConfigError("report: missing config or summary line");
  return r;
}

std::vector<std::string> diff_reports(const SuiteReport& a, const SuiteReport& b) {
  std::vector<std::string> d;
  SuiteConfig ca = a.config, cb = b.config;
  ca.timing = cb.timing = false;
  if (!(ca == cb)) d.push_back("config: " + config_json(a.config).dump() + " vs " + config_json(b.config).dump());
  std::size_t n = std::max(a.cases.size(), b.cases.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.cases.size() || i >= b.cases.size()) {
      d.push_back("case " + std::to_string(i) + ": present in one report only");
      continue;
    }
    CaseResult x = a.cases[i], y = b.cases[i];
    x.millis = y.millis = 0;
    if (x == y) continue;
    std::string msg = "case " + std::to_string(i) + " (" + x.name + "):";
    if (x.verdict != y.verdict) msg += std::string(" verdict ") + verdict_name(x.verdict) + " -> " + verdict_name(y.verdict);
    if (x.residual_terms != y.residual_terms)
      msg += " terms " + std::to_string(x.residual_terms) + " -> " + std::to_string(y.residual_terms);
    if (x.inputs != y.inputs) msg += " inputs differ";
    if (x.name != y.name) msg += " name " + y.name;
    if (x.offending != y.offending) msg += " offending terms differ";
    d.push_back(msg);
  }
  if (a.exact != b.exact || a.boundary != b.boundary || a.violations != b.violations)
    d.push_back("summary: " + std::to_string(a.violations) + " -> " + std::to_string(b.violations) + " violations");
  return d;
}

}  // namespace qkg
