#include "streopt/exact.hpp"

#include <bit>

#include "streopt/disjoint_sets.hpp"
#include "streopt/errors.hpp"

namespace streopt {
namespace {

Cost add_capped(Cost a, Cost b) { return std::min(a + b, kInfinity); }

std::vector<Cost> dist_matrix(const MetricClosure& metric) {
  const int n = metric.size();
  std::vector<Cost> out(static_cast<std::size_t>(n) * n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) out[static_cast<std::size_t>(a) * n + b] = metric.dist(a, b);
  }
  return out;
}

}  // namespace

DwTable::DwTable(int num_nodes, std::vector<Cost> dist, std::vector<int> terminals,
                 const ExactOptions& options)
    : n_(num_nodes), dist_(std::move(dist)), terminals_(std::move(terminals)) {
  const int k = static_cast<int>(terminals_.size());
  if (k == 0) throw InternalError("Dreyfus-Wagner needs at least one terminal");
  if (k > options.terminal_cap || k > 31) {
    throw CapExceeded(std::to_string(k) + " terminals exceed the cap of " +
                      std::to_string(options.terminal_cap));
  }
  const int m = k - 1;
  full_ = (std::uint32_t{1} << m) - 1;
  const std::size_t cells = static_cast<std::size_t>(full_ + 1) * n_;
  dp_.assign(cells, kInfinity);
  g_.assign(cells, kInfinity);
  from_.assign(cells, -1);
  split_.assign(cells, 0);

  for (std::uint32_t mask = 1; mask <= full_; ++mask) {
    if (std::popcount(mask) == 1) {
      const int t = terminals_[std::countr_zero(mask)];
      for (int v = 0; v < n_; ++v) dp_[slot(mask, v)] = d(t, v);
      continue;
    }
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    for (int u = 0; u < n_; ++u) {
      Cost best = kInfinity;
      std::uint32_t arg = 0;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        const std::uint32_t a = low | sub;
        if (a != mask) {
          const Cost c = add_capped(dp_[slot(a, u)], dp_[slot(mask ^ a, u)]);
          if (c < best) {
            best = c;
            arg = a;
          }
        }
        if (sub == 0) break;
      }
      g_[slot(mask, u)] = best;
      split_[slot(mask, u)] = arg;
    }
    for (int v = 0; v < n_; ++v) {
      Cost best = kInfinity;
      int arg = -1;
      for (int u = 0; u < n_; ++u) {
        const Cost c = add_capped(g_[slot(mask, u)], d(u, v));
        if (c < best) {
          best = c;
          arg = u;
        }
      }
      dp_[slot(mask, v)] = best;
      from_[slot(mask, v)] = arg;
    }
  }
  optimum_ = m == 0 ? 0 : dp(full_, terminals_.back());
  if (optimum_ >= kInfinity) throw InternalError("terminals are not connected");
}

void DwTable::collect(std::uint32_t mask, int v,
                      std::vector<std::pair<int, int>>& out) const {
  if (std::popcount(mask) == 1) {
    const int t = terminals_[std::countr_zero(mask)];
    if (t != v) out.emplace_back(t, v);
    return;
  }
  const int u = from_[slot(mask, v)];
  if (u != v) out.emplace_back(u, v);
  const std::uint32_t a = split_[slot(mask, u)];
  collect(a, u, out);
  collect(mask ^ a, u, out);
}

std::vector<std::pair<int, int>> DwTable::tree_pairs() const {
  std::vector<std::pair<int, int>> out;
  if (full_ != 0) collect(full_, terminals_.back(), out);
  return out;
}

ExactResult dreyfus_wagner(const StpInstance& instance, const MetricClosure& metric,
                           const ExactOptions& options) {
  const std::vector<Vertex>& terminals = instance.terminals().items();
  if (static_cast<int>(terminals.size()) > options.terminal_cap) {
    throw CapExceeded(std::to_string(terminals.size()) +
                      " terminals exceed the cap of " +
                      std::to_string(options.terminal_cap));
  }
  DwTable table(metric.size(), dist_matrix(metric), terminals, options);
  std::vector<Edge> pairs;
  for (auto [a, b] : table.tree_pairs()) pairs.push_back(metric.metric_edge(a, b));
  const Forest metric_tree = forest_add(Forest({}, terminals), pairs);

  ExactResult out;
  out.metric_edges = metric_tree.edges();
  out.tree = prune(embed_edges(out.metric_edges, terminals, instance, metric),
                   instance.terminals());
  out.cost = out.tree.cost();
  if (out.cost != table.optimum() || !out.tree.is_tree()) {
    throw InternalError("Dreyfus-Wagner reconstruction does not match the optimum");
  }
  return out;
}

ConnectResult connect(const MetricClosure& metric,
                      const std::vector<std::vector<Vertex>>& trees,
                      const ExactOptions& options) {
  ConnectResult out;
  const int q = static_cast<int>(trees.size());
  out.num_trees = trees.size();
  if (q == 0) throw InternalError("connect called on an empty forest");
  if (q == 1) return out;
  if (q > options.terminal_cap) {
    throw CapExceeded("connect: forest has " + std::to_string(q) +
                      " trees, cap is " + std::to_string(options.terminal_cap));
  }

  // Augmented metric: one virtual node per tree, 0-cost to its vertices.
  const int n = metric.size();
  const int total = n + q;
  auto at = [total](int a, int b) { return static_cast<std::size_t>(a) * total + b; };
  std::vector<Cost> dist(static_cast<std::size_t>(total) * total, kInfinity);
  std::vector<int> next(dist.size(), -1);
  std::vector<int> owner(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      dist[at(a, b)] = metric.dist(a, b);
      next[at(a, b)] = b;
    }
  }
  for (int j = 0; j < q; ++j) {
    const int x = n + j;
    dist[at(x, x)] = 0;
    next[at(x, x)] = x;
    for (Vertex v : trees[j]) {
      if (owner[v] != -1) throw InternalError("connect: trees overlap");
      owner[v] = j;
      dist[at(x, v)] = dist[at(v, x)] = 0;
      next[at(x, v)] = v;
      next[at(v, x)] = x;
    }
  }
  for (int k = 0; k < total; ++k) {
    for (int a = 0; a < total; ++a) {
      if (dist[at(a, k)] >= kInfinity) continue;
      for (int b = 0; b < total; ++b) {
        const Cost c = add_capped(dist[at(a, k)], dist[at(k, b)]);
        if (c < dist[at(a, b)]) {
          dist[at(a, b)] = c;
          next[at(a, b)] = next[at(a, k)];
        }
      }
    }
  }

  std::vector<int> virtuals(q);
  for (int j = 0; j < q; ++j) virtuals[j] = n + j;
  DwTable table(total, dist, virtuals, options);

  std::vector<Edge> hops;
  for (auto [a, b] : table.tree_pairs()) {
    for (int x = a; x != b;) {
      const int y = next[at(x, b)];
      if (x < n && y < n) hops.push_back(metric.metric_edge(x, y));
      x = y;
    }
  }
  std::sort(hops.begin(), hops.end(), canonical_less);
  hops.erase(std::unique(hops.begin(), hops.end()), hops.end());

  DisjointSets sets(n);
  for (const auto& tree : trees) {
    for (Vertex v : tree) sets.unite(tree.front(), v);
  }
  std::vector<Edge> kept;
  for (const Edge& e : hops) {
    if (sets.unite(e.u, e.v)) kept.push_back(e);
  }
  for (const auto& tree : trees) {
    if (sets.find(tree.front()) != sets.find(trees.front().front())) {
      throw InternalError("connect: reconstruction leaves the forest disconnected");
    }
  }

  // Contract each tree to its virtual node and drop dangling Steiner vertices.
  auto image = [&](Vertex v) { return owner[v] >= 0 ? n + owner[v] : v; };
  std::vector<Edge> contracted;
  for (const Edge& e : kept) contracted.push_back(make_edge(image(e.u), image(e.v), e.cost));
  const VertexSet virtual_set(total, virtuals);
  const Forest reduced = prune(Forest(contracted), virtual_set);
  for (const Edge& e : kept) {
    if (reduced.contains_edge(image(e.u), image(e.v))) out.added.push_back(e);
  }
  out.cost = total_cost(out.added);
  out.full_components = full_components(reduced, virtual_set).size();
  if (out.cost != table.optimum()) {
    throw InternalError("connect: reconstructed cost differs from the DP optimum");
  }
  if (out.full_components > static_cast<std::size_t>(q - 1)) {
    throw InternalError("connect: reconnection has more than q-1 full components");
  }
  return out;
}

ConnectResult connect(const StpInstance& instance, const MetricClosure& metric,
                      const RestrictedForest& forest, const ExactOptions& options) {
  return connect(metric, forest_trees(forest, instance.terminals()), options);
}

ConnectResult connect(const StpInstance& instance, const MetricClosure& metric,
                      const Forest& forest, const ExactOptions& options) {
  std::vector<std::vector<Vertex>> groups;
  for (const Forest& tree : forest.trees()) groups.push_back(tree.vertices());
  for (Vertex t : instance.terminals().items()) {
    if (!forest.contains(t)) groups.push_back({t});
  }
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return connect(metric, groups, options);
}

}  // namespace streopt
