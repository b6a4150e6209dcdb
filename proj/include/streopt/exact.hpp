#pragma once

#include <vector>

#include "streopt/forest.hpp"
#include "streopt/instance.hpp"
#include "streopt/metric.hpp"
#include "streopt/restricted_forest.hpp"

namespace streopt {

struct ExactOptions {
  // Largest terminal (or super-terminal) count accepted by the DP.
  int terminal_cap = 16;
};

// Dreyfus-Wagner table over an arbitrary complete distance matrix.
// The last terminal is used as the root, so the table indexes subsets of the
// first k-1 terminals: dp(mask, v) is the cheapest tree joining the terminals
// in mask and v.
class DwTable {
 public:
  // `dist` is row-major num_nodes x num_nodes and must be a metric.
  DwTable(int num_nodes, std::vector<Cost> dist, std::vector<int> terminals,
          const ExactOptions& options = {});

  int num_nodes() const { return n_; }
  const std::vector<int>& terminals() const { return terminals_; }
  std::uint32_t full_mask() const { return full_; }

  Cost dp(std::uint32_t mask, int v) const { return dp_[slot(mask, v)]; }
  Cost optimum() const { return optimum_; }

  // Node pairs of one optimal tree (may repeat a pair or close a zero-cost
  // cycle; callers run them through forest_add).
  std::vector<std::pair<int, int>> tree_pairs() const;

 private:
  std::size_t slot(std::uint32_t mask, int v) const {
    return static_cast<std::size_t>(mask) * n_ + v;
  }
  Cost d(int a, int b) const { return dist_[static_cast<std::size_t>(a) * n_ + b]; }
  void collect(std::uint32_t mask, int v, std::vector<std::pair<int, int>>& out) const;

  int n_;
  std::vector<Cost> dist_;
  std::vector<int> terminals_;
  std::uint32_t full_ = 0;
  std::vector<Cost> dp_;
  std::vector<int> from_;          // node u with dp(mask,v) = g(mask,u) + d(u,v)
  std::vector<std::uint32_t> split_;  // submask realizing g(mask,u)
  std::vector<Cost> g_;
  Cost optimum_ = 0;
};

struct ExactResult {
  std::vector<Edge> metric_edges;  // acyclic, priced by d
  Forest tree;                     // embedded and pruned tree of G
  Cost cost = 0;
};

// Minimum Steiner tree of `instance` with respect to `metric`.
// Throws CapExceeded when |R| exceeds the terminal cap.
ExactResult dreyfus_wagner(const StpInstance& instance, const MetricClosure& metric,
                           const ExactOptions& options = {});

struct ConnectResult {
  std::vector<Edge> added;  // H: metric edges priced by d
  Cost cost = 0;
  std::size_t num_trees = 0;        // q
  std::size_t full_components = 0;  // of the contracted reconnection tree
};

// Cheapest set of metric edges joining the given vertex groups into one tree.
// Groups must be disjoint. Throws CapExceeded when there are more groups than
// the terminal cap.
ConnectResult connect(const MetricClosure& metric,
                      const std::vector<std::vector<Vertex>>& trees,
                      const ExactOptions& options = {});

// Connect for a forest of K_n; terminals not spanned by F count as trees.
ConnectResult connect(const StpInstance& instance, const MetricClosure& metric,
                      const RestrictedForest& forest, const ExactOptions& options = {});

// Connect for a forest of G.
ConnectResult connect(const StpInstance& instance, const MetricClosure& metric,
                      const Forest& forest, const ExactOptions& options = {});

}  // namespace streopt
