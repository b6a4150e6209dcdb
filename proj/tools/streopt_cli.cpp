#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "streopt/errors.hpp"
#include "streopt/exact.hpp"
#include "streopt/harness/constants.hpp"
#include "streopt/harness/generate.hpp"
#include "streopt/harness/oracle.hpp"
#include "streopt/harness/suite.hpp"
#include "streopt/io.hpp"
#include "streopt/reopt.hpp"

using namespace streopt;

namespace {

Ratio parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    const long long p = std::stoll(text.substr(0, slash), &used);
    long long q = 1;
    if (slash != std::string::npos) q = std::stoll(text.substr(slash + 1));
    if (q <= 0) throw ValidationError("denominator must be positive");
    return Ratio(p, q);
  } catch (const std::logic_error&) {
    throw ValidationError("invalid ratio '" + text + "'");
  }
}

std::optional<std::uint64_t> env_u64(const char* name) {
  const char* value = std::getenv(name);
  if (!value || !*value) return std::nullopt;
  try {
    return std::stoull(value);
  } catch (const std::logic_error&) {
    throw ValidationError(std::string(name) + " must be a non-negative integer");
  }
}

ExactOptions exact_options() {
  ExactOptions o;
  if (auto cap = env_u64("STREOPT_TERMINAL_CAP")) o.terminal_cap = static_cast<int>(*cap);
  return o;
}

// BASE paths are resolved next to the scenario file.
FileLoader loader_near(const std::string& scenario_path) {
  const auto dir = std::filesystem::path(scenario_path).parent_path();
  return [dir](const std::string& p) {
    const std::filesystem::path path(p);
    return read_file(path.is_absolute() ? p : (dir / path).string());
  };
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner tree solving and reoptimization"};
  app.require_subcommand(1);

  std::string solve_path;
  bool solve_exact = false;
  bool solve_two = false;
  auto* solve = app.add_subcommand("solve", "Solve an STP instance");
  solve->add_option("file", solve_path, "STP file")->required();
  auto* exact_flag = solve->add_flag("--exact", solve_exact, "Dreyfus-Wagner (default)");
  solve->add_flag("--two-approx", solve_two, "metric MST 2-approximation")->excludes(exact_flag);

  std::string reopt_path;
  std::string epsilon_text = "1";
  std::optional<std::uint64_t> h_cap;
  bool verbose = false;
  auto* reopt = app.add_subcommand("reopt", "Reoptimize a scenario");
  reopt->add_option("scenario", reopt_path, "scenario file")->required();
  reopt->add_option("--epsilon", epsilon_text, "approximation slack p/q")->required();
  reopt->add_option("--h-cap", h_cap, "cap on the swap depth h");
  reopt->add_flag("--verbose", verbose, "write the BuildST audit log to stderr");

  auto* gen = app.add_subcommand("gen", "Generate instances or scenarios");
  gen->require_subcommand(1);
  InstanceSpec ispec;
  std::string topology = "random-connected";
  std::string kind = "terminal-add";
  bool two_approx_solution = false;
  auto add_instance_options = [&](CLI::App* sub) {
    sub->add_option("--seed", ispec.seed, "random seed");
    sub->add_option("--n", ispec.n, "vertex count");
    sub->add_option("--topology", topology, "random-connected | grid | tree-plus-chords");
    sub->add_option("--terminals", ispec.terminals, "terminal count");
    sub->add_option("--terminal-fraction", ispec.terminal_fraction, "terminal fraction");
    sub->add_option("--min-weight", ispec.min_weight, "smallest edge weight");
    sub->add_option("--max-weight", ispec.max_weight, "largest edge weight");
    sub->add_option("--extra-edges", ispec.extra_edges, "edges beyond the spanning tree");
  };
  auto* gen_instance = gen->add_subcommand("instance", "random STP instance");
  add_instance_options(gen_instance);
  auto* gen_scenario = gen->add_subcommand("scenario", "random reoptimization scenario");
  add_instance_options(gen_scenario);
  gen_scenario->add_option("--kind", kind,
                           "terminal-add | terminal-remove | edge-inc | edge-dec");
  gen_scenario->add_flag("--two-approx-solution", two_approx_solution,
                         "provide a 2-approximate solution with RHO 2");

  std::string oracle_path;
  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum of a small instance");
  oracle->add_option("file", oracle_path, "STP file")->required();

  auto* constants = app.add_subcommand("constants", "Prior ratios at sigma = ln 4");

  std::string config_path;
  auto* suite = app.add_subcommand("suite", "Run a benchmark suite");
  suite->add_option("--config", config_path, "JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) {
      std::vector<std::string> warnings;
      const StpInstance instance = parse_stp(read_file(solve_path), &warnings);
      print_warnings(warnings);
      const MetricClosure metric = MetricClosure::compute(instance);
      const Forest tree = solve_two ? two_approx(instance, metric)
                                    : dreyfus_wagner(instance, metric, exact_options()).tree;
      std::cout << write_solution(tree, instance.decimals());
    } else if (reopt->parsed()) {
      std::vector<std::string> warnings;
      const ScenarioFile task =
          parse_scenario(read_file(reopt_path), loader_near(reopt_path), &warnings);
      print_warnings(warnings);
      ReoptOptions options;
      options.exact = exact_options();
      options.h_cap = h_cap ? h_cap : env_u64("STREOPT_H_CAP");
      const ReoptResult result = reoptimize(task, parse_ratio(epsilon_text), options);
      if (verbose) {
        for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
        for (const auto& audit : result.audits) std::cerr << audit.to_jsonl();
      }
      std::cout << "ALGORITHM " << scenario_name(result.scenario) << "\n";
      std::cout << "MODE " << result.mode << "\n";
      std::cout << "H " << result.h_theoretical.str() << " EFFECTIVE "
                << result.h_effective.str() << "\n";
      std::cout << write_solution(result.tree, task.base.decimals());
    } else if (gen_instance->parsed()) {
      ispec.topology = parse_topology(topology);
      std::cout << write_stp(generate_instance(ispec));
    } else if (gen_scenario->parsed()) {
      ispec.topology = parse_topology(topology);
      const StpInstance instance = generate_instance(ispec);
      ScenarioSpec sspec;
      sspec.seed = ispec.seed;
      sspec.optimal = !two_approx_solution;
      sspec.kind = Scenario::kTerminalAdd;
      bool known = false;
      for (Scenario s : {Scenario::kTerminalAdd, Scenario::kEdgeIncrease,
                         Scenario::kTerminalRemove, Scenario::kEdgeDecrease}) {
        if (scenario_name(s) == kind) {
          sspec.kind = s;
          known = true;
        }
      }
      if (!known) throw ValidationError("unknown scenario kind '" + kind + "'");
      std::cout << write_scenario(generate_scenario(instance, sspec));
    } else if (oracle->parsed()) {
      const StpInstance instance = parse_stp(read_file(oracle_path));
      OracleLimits limits;
      if (auto cap = env_u64("STREOPT_ORACLE_VERTEX_CAP")) limits.max_vertices = static_cast<int>(*cap);
      if (auto cap = env_u64("STREOPT_ORACLE_TERMINAL_CAP")) limits.max_terminals = static_cast<int>(*cap);
      const OracleResult best = oracle_solve(instance, limits);
      std::cout << write_solution(Forest(best.edges, instance.terminals().items()),
                                  instance.decimals());
    } else if (constants->parsed()) {
      for (const PriorRatio& r : table1_constants()) {
        std::cout << std::left << std::setw(32) << r.scenario << std::setw(16) << r.formula
                  << std::fixed << std::setprecision(5) << r.value << "  (reported "
                  << std::setprecision(3) << r.reported << ")\n";
      }
    } else if (suite->parsed()) {
      SuiteConfig config = parse_suite_config(read_file(config_path));
      if (auto cap = env_u64("STREOPT_H_CAP"); cap && !config.h_cap) config.h_cap = cap;
      if (auto cap = env_u64("STREOPT_TERMINAL_CAP")) config.exact.terminal_cap = static_cast<int>(*cap);
      const SuiteReport report = run_suite(config);
      std::cout << report.jsonl();
      std::cerr << report.summary();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
