#pragma once

#include <vector>

#include "streopt/errors.hpp"
#include "streopt/instance.hpp"

namespace streopt {

class OracleCapExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

struct OracleLimits {
  int max_vertices = 14;
  int max_terminals = 7;
};

struct OracleResult {
  Cost cost = 0;
  std::vector<Edge> edges;  // an optimal tree of G, terminal leaves
};

// Brute force: for every set X of Steiner vertices, the MST of the
// shortest-path closure on R + X; the cheapest one wins. Shares no code with
// the exact solver.
OracleResult oracle_solve(const StpInstance& instance, const OracleLimits& limits = {});

}  // namespace streopt
