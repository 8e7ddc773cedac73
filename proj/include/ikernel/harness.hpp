#pragma once

#include "ikernel/serialize.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ikernel {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Verdict { pass, fail, none_up_to_bound };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);
/// 0 pass, 1 fail, 2 none-up-to-bound.
int exit_code(Verdict v);

struct ScenarioConfig {
  std::string scenario;
  std::size_t n = 1;
  std::size_t m = 1;
  std::uint32_t max_degree = 8;
  std::map<std::string, std::size_t> bounds;  // overrides of default_bounds()
  std::string output = "json";
};

/// relation_degree 5, coeff_degree 3, localization_power 4, equivalence_degree 6.
const std::map<std::string, std::size_t>& default_bounds();

json config_to_json(const ScenarioConfig& cfg);
ScenarioConfig config_from_json(const json& j);
/// Throws ConfigError on unknown scenario, bad (n, m), zero degree bound,
/// unknown bound keys or unknown output format.
void validate(const ScenarioConfig& cfg);

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::string claim;  // the statement the scenario checks
};

const std::vector<ScenarioInfo>& list_scenarios();

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string summary;
  json details = json::object();
};

struct ScenarioReport {
  ScenarioConfig config;
  std::map<std::string, std::size_t> bounds;  // effective bounds
  Verdict verdict = Verdict::pass;
  std::vector<CheckResult> checks;
  json algebras = json::object();       // name -> subalgebra_to_json
  json certificates = json::array();    // re-checkable by verify_report
  double wall_time_ms = 0;
};

ScenarioReport run_scenario(const ScenarioConfig& cfg);

/// Schema-1 report. Wall time is omitted when include_timing is false, which
/// makes the output byte-identical across runs.
json report_to_json(const ScenarioReport& report, bool include_timing = true);
std::string report_to_text(const ScenarioReport& report);

struct VerifyResult {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Re-checks every certificate in a report with plain polynomial arithmetic.
VerifyResult verify_report(const json& report);

}  // namespace ikernel
