#pragma once

#include <cstdint>

#include "streopt/forest.hpp"
#include "streopt/metric.hpp"
#include "streopt/restricted_forest.hpp"

namespace streopt {

struct RestrictionResult {
  RestrictedForest forest;
  std::uint64_t k = 0;  // saturates at UINT64_MAX
  Cost restricted_cost = 0;  // d(S_xi)
  Cost input_cost = 0;       // c(S)

  double ratio() const {
    return input_cost == 0 ? 1.0
                           : static_cast<double>(restricted_cost) / static_cast<double>(input_cost);
  }
};

// ceil(1/xi) for xi > 0.
int ceil_inverse(const Ratio& xi);

// 2^exponent, saturating.
std::uint64_t pow2_saturating(int exponent);

// k-restricted forest of K_n with k = 2^ceil(1/xi) and d(S_xi) <= (1+xi) c(S).
// S must be a tree whose edges carry their c-costs; `terminals` is the
// terminal set the restriction is taken against. Every Steiner vertex of
// degree >= 3 in S is kept, and a terminal of degree 2 in S ends up with
// degree <= 4. Throws CostBoundViolated if the bound fails.
RestrictionResult restricted_st(const Forest& tree, const VertexSet& terminals,
                                const Ratio& xi, const MetricClosure& metric);

// Same, with k = 2^(2+ceil(1/xi)) and v guaranteed to appear in the output.
// Throws VertexNotInSolution when v is not a vertex of S.
RestrictionResult restricted_st_pinned(const Forest& tree, const VertexSet& terminals,
                                       const Ratio& xi, Vertex v,
                                       const MetricClosure& metric);

}  // namespace streopt
