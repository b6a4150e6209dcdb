#pragma once

#include <optional>
#include <string>
#include <vector>

#include "streopt/buildst.hpp"
#include "streopt/io.hpp"
#include "streopt/restrict.hpp"

namespace streopt {

enum class Scenario { kTerminalAdd, kEdgeIncrease, kTerminalRemove, kEdgeDecrease };

Scenario scenario_of(const Modification& mod);
std::string scenario_name(Scenario s);

struct ApproxParams {
  Ratio epsilon;
  Ratio xi;                // epsilon / 10
  int r = 0;               // ceil(1/xi)
  int ell = 0;             // ceil(2/epsilon), logged only
  std::uint64_t k_plain = 0;
  std::uint64_t k_pinned = 0;

  // Theoretical h for each scenario.
  BigInt h(Scenario s) const;
};

// Throws ValidationError unless epsilon > 0.
ApproxParams make_params(const Ratio& epsilon);

struct ReoptOptions {
  std::optional<std::uint64_t> h_cap;
  ExactOptions exact;
};

struct ReoptResult {
  Forest tree;
  Cost cost = 0;
  Scenario scenario = Scenario::kTerminalAdd;
  // "guaranteed", "heuristic" (h was capped) or "two-approx" (guard).
  std::string mode;
  BigInt h_theoretical;
  BigInt h_effective;
  std::vector<BuildAudit> audits;
  std::vector<std::string> notes;
};

// MST of the terminal metric closure, embedded and pruned.
Forest two_approx(const StpInstance& instance, const MetricClosure& metric);

struct PathCandidate {
  std::vector<Vertex> vertices;  // from one endpoint to the other
  int steiner_deg3 = 0;          // Steiner vertices of degree >= 3 in S
  Cost cost = 0;

  std::size_t hops() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  std::vector<Edge> edges(const Forest& tree) const;
};

// Longest (in hops) path of S starting at t with at most `bound` Steiner
// vertices of S-degree >= 3; ties go to the smallest far endpoint.
PathCandidate find_pstar(const Forest& tree, Vertex t, int bound,
                         const VertexSet& terminals);

// Paths between all vertex pairs u < v of S within the bound, ordered by
// (v, u).
std::vector<PathCandidate> enumerate_path_set(const Forest& tree, int bound,
                                              const VertexSet& terminals);

ReoptResult reopt_terminal_added(const ScenarioFile& task, const ApproxParams& params,
                                 const ReoptOptions& options = {});
ReoptResult reopt_edge_increased(const ScenarioFile& task, const ApproxParams& params,
                                 const ReoptOptions& options = {});
ReoptResult reopt_terminal_removed(const ScenarioFile& task, const ApproxParams& params,
                                   const ReoptOptions& options = {});
ReoptResult reopt_edge_decreased(const ScenarioFile& task, const ApproxParams& params,
                                 const ReoptOptions& options = {});

// Dispatches on the modification. Falls back to two_approx when epsilon > 1
// or rho > 2.
ReoptResult reoptimize(const ScenarioFile& task, const Ratio& epsilon,
                       const ReoptOptions& options = {});

}  // namespace streopt
