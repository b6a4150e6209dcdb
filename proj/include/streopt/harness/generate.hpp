#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "streopt/io.hpp"
#include "streopt/reopt.hpp"

namespace streopt {

// mt19937_64 with hand-rolled bounded sampling, so a seed produces the same
// stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

enum class Topology { kRandomConnected, kGrid, kTreePlusChords };

Topology parse_topology(const std::string& name);
std::string topology_name(Topology t);

struct InstanceSpec {
  std::uint64_t seed = 1;
  int n = 8;
  Topology topology = Topology::kRandomConnected;
  // Terminal count; when unset, round(terminal_fraction * n), at least 1.
  std::optional<int> terminals;
  double terminal_fraction = 0.4;
  Cost min_weight = 1;
  Cost max_weight = 10;
  // Extra edges beyond the spanning tree (random-connected, tree-plus-chords).
  // When unset: n for random-connected, n/3 for tree-plus-chords.
  std::optional<int> extra_edges;
};

StpInstance generate_instance(const InstanceSpec& spec);

struct ScenarioSpec {
  std::uint64_t seed = 1;
  Scenario kind = Scenario::kTerminalAdd;
  // true: optimal solution with RHO 1; false: two_approx with RHO 2.
  bool optimal = true;
};

// Throws ValidationError when the instance admits no modification of the
// requested kind (for example terminal-add with R = V).
ScenarioFile generate_scenario(const StpInstance& instance, const ScenarioSpec& spec);

}  // namespace streopt
