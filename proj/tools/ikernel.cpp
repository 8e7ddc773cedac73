#include "ikernel/actions.hpp"
#include "ikernel/harness.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ikernel;

namespace {

constexpr int kUsage = 3;

std::map<std::string, std::size_t> parse_bounds(const std::vector<std::string>& items) {
  std::map<std::string, std::size_t> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("bound '" + item + "' is not KEY=V");
    const auto value = item.substr(eq + 1);
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(value, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != value.size()) throw ConfigError("bound '" + item + "' needs an integer");
    out[item.substr(0, eq)] = v;
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariant-ring and integrality checks for polynomial subalgebras"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one scenario and print its report");
  ScenarioConfig cfg;
  std::string config_file, out_file;
  std::vector<std::string> bound_items;
  bool no_timing = false;
  run->add_option("--config", config_file, "scenario config as JSON");
  auto* scenario_opt = run->add_option("--scenario", cfg.scenario, "scenario name (see `list`)");
  auto* n_opt = run->add_option("--n", cfg.n, "number of x variables");
  auto* m_opt = run->add_option("--m", cfg.m, "number of y variables");
  auto* deg_opt = run->add_option("--max-degree", cfg.max_degree, "largest degree scanned");
  run->add_option("--bound", bound_items, "search bound override KEY=V (repeatable)");
  auto* output_opt = run->add_option("--output", cfg.output, "json or text");
  run->add_option("--out", out_file, "write the report here instead of stdout");
  run->add_flag("--no-timing", no_timing, "omit wall time so reports are byte-reproducible");

  // list
  auto* list = app.add_subcommand("list", "print the scenario catalogue");

  // verify
  auto* verify = app.add_subcommand("verify", "re-check every certificate in a JSON report");
  std::string report_file;
  verify->add_option("report", report_file, "report file")->required();

  // membership
  auto* member = app.add_subcommand("membership", "decide f ∈ A and print a certificate");
  std::string algebra = "anm", poly_text;
  std::size_t mn = 1, mm = 1;
  member->add_option("--algebra", algebra, "anm or monomial")
      ->check(CLI::IsMember({"anm", "monomial"}));
  member->add_option("--n", mn, "number of x variables");
  member->add_option("--m", mm, "number of y variables");
  member->add_option("--poly", poly_text, "polynomial in x1.., y1.., z")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run) {
      if (!config_file.empty()) {
        const auto base = config_from_json(read_json_file(config_file));
        if (!*scenario_opt) cfg.scenario = base.scenario;
        if (!*n_opt) cfg.n = base.n;
        if (!*m_opt) cfg.m = base.m;
        if (!*deg_opt) cfg.max_degree = base.max_degree;
        if (!*output_opt) cfg.output = base.output;
        cfg.bounds = base.bounds;
      } else if (cfg.scenario.empty()) {
        throw ConfigError("--scenario is required");
      }
      for (const auto& [k, v] : parse_bounds(bound_items)) cfg.bounds[k] = v;
      validate(cfg);
      const auto report = run_scenario(cfg);
      if (cfg.output == "text") {
        write_output(out_file, report_to_text(report));
      } else {
        write_output(out_file, report_to_json(report, !no_timing).dump(2) + "\n");
      }
      return exit_code(report.verdict);
    }

    if (*list) {
      for (const auto& s : list_scenarios()) {
        std::cout << s.name << "\n    " << s.description << "\n    claim: " << s.claim << '\n';
      }
      return 0;
    }

    if (*verify) {
      const auto result = verify_report(read_json_file(report_file));
      for (const auto& f : result.failures) std::cout << "FAILED " << f << '\n';
      std::cout << result.checked << " certificates checked, " << result.failures.size()
                << " failed\n";
      return result.ok() ? 0 : 1;
    }

    if (*member) {
      const auto inst = build_standard_instance(mn, mm);
      Polynomial f(inst.coords);
      try {
        f = parse_polynomial(poly_text, inst.coords);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      const auto top = static_cast<std::uint32_t>(std::max(f.degree(), 1));
      const SubalgebraSpec spec = algebra == "anm" ? inst.anm : monomial_algebra_spec(inst.monomial, top);
      const GradedBasis a(spec);
      const auto cert = membership(a, f);
      if (!cert) {
        std::cout << "not a member\n";
        return 1;
      }
      std::cout << "member: " << cert->expression.to_string() << '\n';
      std::cout << "generators:\n";
      for (const auto& g : spec.generators()) {
        if (cert->expression.degree_in(spec.label_system()->index(g.label)) > 0) {
          std::cout << "  " << g.label << " = " << g.poly.to_string() << '\n';
        }
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
