#pragma once

#include <optional>
#include <string>
#include <vector>

#include "streopt/harness/generate.hpp"

namespace streopt {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int count = 10;  // generated scenarios per kind
  InstanceSpec instance;
  std::vector<Scenario> kinds{Scenario::kTerminalAdd, Scenario::kEdgeIncrease,
                              Scenario::kTerminalRemove, Scenario::kEdgeDecrease};
  bool optimal = true;
  std::vector<std::string> scenario_files;
  Ratio epsilon{1};
  std::optional<std::uint64_t> h_cap;
  bool oracle = true;
  int workers = 1;
  bool timing = false;
  ExactOptions exact;
};

// Reads the JSON config format documented in the README.
SuiteConfig parse_suite_config(const std::string& json_text);

struct RunReport {
  std::size_t id = 0;
  std::string source;  // "gen:<seed>" or the scenario path
  std::string algorithm;
  int decimals = 0;
  Cost input_cost = 0;           // c(S)
  Cost input_cost_modified = 0;  // c'(S)
  Cost output_cost = 0;
  Cost baseline_cost = 0;        // two_approx on I'
  std::optional<Cost> oracle_cost;
  std::optional<bool> rho_confirmed;
  Ratio rho{1};
  Ratio epsilon{1};
  std::string mode;
  bool feasible = false;
  std::optional<double> wall_ms;
  std::optional<std::string> error;
  std::optional<int> error_code;

  Ratio bound() const { return rho + epsilon; }
  std::optional<double> ratio() const;
  // Guaranteed-mode run whose ratio exceeds rho + epsilon.
  bool violates_bound() const;
  std::string to_json() const;
};

struct SuiteReport {
  std::vector<RunReport> runs;  // sorted by id

  std::string jsonl() const;
  std::string summary() const;
};

SuiteReport run_suite(const SuiteConfig& config);

// Runs one scenario the same way the suite does.
RunReport run_scenario(const ScenarioFile& task, const SuiteConfig& config, std::size_t id,
                       const std::string& source);

}  // namespace streopt
