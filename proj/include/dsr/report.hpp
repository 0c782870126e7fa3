#pragma once

// Verification suite runner and its JSON report.

#include "dsr/criteria.hpp"

#include <json.hpp>

namespace dsr {

inline constexpr const char* report_schema = "dsr-report/1";
inline constexpr const char* library_version = "0.1.0";

struct VerificationReport {
  SuiteConfig config;
  ToleranceProfile tolerances;
  std::vector<CriterionResult> acceptance;
  std::vector<CriterionResult> configured;

  bool all_pass() const {
    for (const auto* g : {&acceptance, &configured})
      for (const auto& c : *g)
        if (!c.pass()) return false;
    return true;
  }

  int failed_count() const {
    int f = 0;
    for (const auto* g : {&acceptance, &configured})
      for (const auto& c : *g) f += !c.pass();
    return f;
  }
};

/// Acceptance criteria in order, then the configured checks. Each criterion draws from its own
/// generator seeded with seed + id, so results do not depend on which other checks ran.
inline VerificationReport run_suite(const SuiteConfig& config, const ToleranceProfile& base = ToleranceProfile::defaults()) {
  config.validate();
  VerificationReport rep{config, config.tolerances(base), {}, {}};
  const auto& fns = suite::acceptance_criteria();
  for (std::size_t i = 0; i < fns.size(); ++i) rep.acceptance.push_back(fns[i](rep.tolerances, config.seed + i + 1));
  rep.configured = suite::configured_checks(config, rep.tolerances);
  return rep;
}

namespace detail {
inline nlohmann::ordered_json residual_json(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

inline nlohmann::ordered_json criterion_json(const CriterionResult& c, bool timing) {
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["name"] = c.name;
  j["pass"] = c.pass();
  j["max_residual"] = residual_json(c.checks.max_residual());
  j["wall_time_s"] = timing ? c.seconds : 0.0;
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& it : c.checks.items) {
    nlohmann::ordered_json e;
    e["name"] = it.name;
    e["residual"] = residual_json(it.residual);
    e["tolerance"] = it.tolerance;
    e["comparison"] = it.lower_bound ? ">" : "<=";
    e["pass"] = it.pass;
    arr.push_back(std::move(e));
  }
  return j;
}
}  // namespace detail

/// With timing = false all wall-time fields are zero and the output is a function of the config.
inline nlohmann::ordered_json report_json(const VerificationReport& r, bool timing = true) {
  nlohmann::ordered_json j;
  j["schema"] = report_schema;
  j["version"] = library_version;
  auto& cfg = j["config"];
  cfg["rank"] = r.config.rank;
  cfg["theta"] = r.config.theta_string();
  cfg["p"] = r.config.p;
  cfg["truncation"] = r.config.truncation;
  cfg["seed"] = r.config.seed;
  cfg["output"] = r.config.output;
  j["tolerances"] = r.tolerances.values();
  for (const auto& [name, group] : {std::pair{"acceptance", &r.acceptance}, std::pair{"configured", &r.configured}}) {
    auto& arr = j[name] = nlohmann::ordered_json::array();
    for (const auto& c : *group) arr.push_back(detail::criterion_json(c, timing));
  }
  double total = 0.0;
  for (const auto* g : {&r.acceptance, &r.configured})
    for (const auto& c : *g) total += c.seconds;
  auto& sum = j["summary"];
  sum["criteria"] = r.acceptance.size() + r.configured.size();
  sum["failed"] = r.failed_count();
  sum["all_pass"] = r.all_pass();
  sum["wall_time_s"] = timing ? total : 0.0;
  return j;
}

/// One line per criterion: PASS/FAIL, id, name, worst residual.
inline void write_summary(std::ostream& os, const std::vector<CriterionResult>& rs) {
  for (const auto& c : rs) {
    std::ostringstream res;
    res.precision(3);
    res << std::scientific << c.checks.max_residual();
    os << (c.pass() ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " max_residual=" << res.str();
    if (!c.pass()) {
      os << " failing:";
      for (const auto& it : c.checks.items)
        if (!it.pass) os << " " << it.name;
    }
    os << "\n";
  }
}

}  // namespace dsr
