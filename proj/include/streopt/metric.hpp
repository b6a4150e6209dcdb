#pragma once

#include <optional>
#include <vector>

#include "streopt/instance.hpp"
#include "streopt/types.hpp"

namespace streopt {

// All-pairs shortest-path metric d of an instance, optionally computed on
// G - e. Among the shortest paths between a pair the closure keeps the one with
// the fewest hops, then the smallest predecessor id at every step.
class MetricClosure {
 public:
  // Throws DisconnectedAfterExclusion when removing `excluded` separates two
  // terminals.
  static MetricClosure compute(const StpInstance& instance,
                               std::optional<Edge> excluded = std::nullopt);

  int size() const { return n_; }
  Cost dist(Vertex a, Vertex b) const { return dist_[index(a, b)]; }
  bool reachable(Vertex a, Vertex b) const { return dist(a, b) < kInfinity; }
  const std::optional<Edge>& excluded() const { return excluded_; }

  // Vertex sequence of the canonical shortest path from `from` to `to`.
  std::vector<Vertex> path(Vertex from, Vertex to) const;
  // Graph edges of path(min(a,b), max(a,b)) with their graph costs.
  std::vector<Edge> path_edges(Vertex a, Vertex b) const;

  // Metric edge (a, b) priced at d(a, b).
  Edge metric_edge(Vertex a, Vertex b) const { return make_edge(a, b, dist(a, b)); }

 private:
  std::size_t index(Vertex a, Vertex b) const {
    return static_cast<std::size_t>(a) * n_ + b;
  }

  int n_ = 0;
  std::optional<Edge> excluded_;
  std::vector<Cost> dist_;
  std::vector<Vertex> pred_;       // pred_[s*n+v]: vertex before v on s->v
  std::vector<Cost> edge_cost_;    // direct edge costs, kInfinity if absent
};

}  // namespace streopt
