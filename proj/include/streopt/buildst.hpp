#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "streopt/exact.hpp"
#include "streopt/forest.hpp"
#include "streopt/restricted_forest.hpp"

namespace streopt {

using BigInt = boost::multiprecision::cpp_int;

struct BuildOptions {
  // Upper bound applied to the requested h; unset means no cap.
  std::optional<std::uint64_t> h_cap;
  ExactOptions exact;
};

struct CandidateRecord {
  std::vector<std::size_t> removed;  // component indices
  std::size_t trees = 0;             // q' handed to Connect
  Cost forest_cost = 0;              // d'(F - H)
  Cost connect_cost = 0;
  Cost total = 0;                    // forest_cost + connect_cost
  Cost embedded_cost = 0;            // c' of the tree after embedding
};

struct BuildAudit {
  BigInt h_theoretical;
  BigInt h_effective;
  std::size_t components = 0;
  bool from_scratch = false;
  std::vector<CandidateRecord> candidates;
  std::size_t chosen = 0;  // index into candidates; unused for from_scratch

  bool capped() const { return h_effective < h_theoretical; }
  // One JSON object per line: a header line, then one per candidate.
  std::string to_jsonl() const;
};

struct BuildResult {
  Forest tree;
  Cost cost = 0;
  BuildAudit audit;
};

// Evaluates BuildST for a fixed target instance I' and metric M'. The exact
// from-scratch solution is computed at most once per engine, so repeated runs
// over different forests share it.
class SwapEngine {
 public:
  SwapEngine(const StpInstance& instance, const MetricClosure& metric,
             BuildOptions options = {});

  // Throws ValidationError when h < 1 and CapExceeded when a candidate needs
  // Connect on more trees than the exact solver allows.
  BuildResult run(const RestrictedForest& forest, const BigInt& h);

  const Forest& from_scratch();

 private:
  const StpInstance& instance_;
  const MetricClosure& metric_;
  BuildOptions options_;
  std::optional<Forest> scratch_;
};

BuildResult build_st(const StpInstance& instance, const RestrictedForest& forest,
                     const BigInt& h, const MetricClosure& metric,
                     const BuildOptions& options = {});

}  // namespace streopt
