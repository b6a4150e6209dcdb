#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "streopt/forest.hpp"
#include "streopt/instance.hpp"

namespace streopt {

struct EdgeIncrease {
  Vertex u = 0;
  Vertex v = 0;
  Cost delta = 0;
  friend bool operator==(const EdgeIncrease&, const EdgeIncrease&) = default;
};

struct EdgeDecrease {
  Vertex u = 0;
  Vertex v = 0;
  Cost delta = 0;
  friend bool operator==(const EdgeDecrease&, const EdgeDecrease&) = default;
};

struct TerminalAdd {
  Vertex t = 0;
  friend bool operator==(const TerminalAdd&, const TerminalAdd&) = default;
};

struct TerminalRemove {
  Vertex t = 0;
  friend bool operator==(const TerminalRemove&, const TerminalRemove&) = default;
};

using Modification = std::variant<EdgeIncrease, EdgeDecrease, TerminalAdd, TerminalRemove>;

// "edge-inc", "edge-dec", "terminal-add" or "terminal-remove".
std::string modification_kind(const Modification& mod);

// Throws ValidationError when the modification's preconditions do not hold
// on `instance`.
void check_modification(const StpInstance& instance, const Modification& mod);

// The modified instance I'.
StpInstance apply_modification(const StpInstance& instance, const Modification& mod);

// A reoptimization task: base instance, provided solution, one local
// modification and the declared approximation quality of the solution.
struct ScenarioFile {
  StpInstance base;
  Forest solution;
  Ratio rho{1};
  Modification modification;

  friend bool operator==(const ScenarioFile& a, const ScenarioFile& b) {
    return a.base == b.base && a.solution == b.solution && a.rho == b.rho &&
           a.modification == b.modification;
  }
};

// Resolves "BASE <path>" references; receives the path as written.
using FileLoader = std::function<std::string(const std::string&)>;

// Sections other than Comment, Graph and Terminals are skipped; a note is
// appended to `warnings` when it is non-null.
StpInstance parse_stp(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string write_stp(const StpInstance& instance);

ScenarioFile parse_scenario(std::string_view text, const FileLoader& loader = {},
                            std::vector<std::string>* warnings = nullptr);
std::string write_scenario(const ScenarioFile& scenario);

// Reads a whole file; throws ValidationError if it cannot be opened.
std::string read_file(const std::string& path);

// Solution block printed by the CLI: COST, SOLUTION m and SE lines.
std::string write_solution(const Forest& tree, int decimals);

}  // namespace streopt
