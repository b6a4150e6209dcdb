#pragma once

// Small brute-force references used across the unit tests. None of them call
// into the exact solver or the metric closure.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "streopt/disjoint_sets.hpp"
#include "streopt/forest.hpp"
#include "streopt/instance.hpp"

namespace testing_support {

using streopt::Cost;
using streopt::Edge;
using streopt::Forest;
using streopt::StpInstance;
using streopt::Vertex;

inline std::vector<std::vector<std::pair<Vertex, Cost>>> adjacency(const StpInstance& I) {
  std::vector<std::vector<std::pair<Vertex, Cost>>> adj(I.num_vertices());
  for (const Edge& e : I.edges()) {
    adj[e.u].push_back({e.v, e.cost});
    adj[e.v].push_back({e.u, e.cost});
  }
  return adj;
}

// Shortest distances by enumerating every simple path out of every source.
inline std::vector<std::vector<Cost>> distances_by_paths(const StpInstance& I) {
  const int n = I.num_vertices();
  const auto adj = adjacency(I);
  std::vector<std::vector<Cost>> best(n, std::vector<Cost>(n, streopt::kInfinity));
  std::vector<char> on(n, 0);
  std::function<void(Vertex, Vertex, Cost)> walk = [&](Vertex s, Vertex x, Cost c) {
    best[s][x] = std::min(best[s][x], c);
    on[x] = 1;
    for (auto [y, w] : adj[x]) {
      if (!on[y]) walk(s, y, c + w);
    }
    on[x] = 0;
  };
  for (Vertex s = 0; s < n; ++s) walk(s, s, 0);
  return best;
}

// Cheapest subset of graph edges outside F that joins the trees of F and the
// terminals F misses. Exponential in the number of free edges.
inline Cost brute_force_connect(const StpInstance& I, const Forest& F) {
  std::vector<Edge> free_edges;
  for (const Edge& e : I.edges()) {
    if (!F.contains_edge(e.u, e.v)) free_edges.push_back(e);
  }
  std::vector<Vertex> need = F.vertices();
  for (Vertex t : I.terminals().items()) need.push_back(t);
  const std::size_t m = free_edges.size();
  Cost best = streopt::kInfinity;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Cost c = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) c += free_edges[i].cost;
    }
    if (c >= best) continue;
    streopt::DisjointSets dsu(I.num_vertices());
    for (const Edge& e : F.edges()) dsu.unite(e.u, e.v);
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) dsu.unite(free_edges[i].u, free_edges[i].v);
    }
    const auto root = dsu.find(need.front());
    if (std::all_of(need.begin(), need.end(), [&](Vertex v) { return dsu.find(v) == root; })) {
      best = c;
    }
  }
  return best;
}

// Every path of a tree as a vertex sequence, from each vertex to each other one.
inline std::vector<std::vector<Vertex>> all_tree_paths(const Forest& tree) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Edge& e : tree.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  std::function<void(Vertex, Vertex)> walk = [&](Vertex x, Vertex from) {
    stack.push_back(x);
    out.push_back(stack);
    for (Vertex y : adj[x]) {
      if (y != from) walk(y, x);
    }
    stack.pop_back();
  };
  for (Vertex v : tree.vertices()) walk(v, -1);
  return out;
}

inline bool is_spanning_tree_of(const std::vector<Edge>& edges, const std::vector<Vertex>& vs) {
  if (edges.size() + 1 != vs.size()) return false;
  std::map<Vertex, std::size_t> id;
  for (std::size_t i = 0; i < vs.size(); ++i) id[vs[i]] = i;
  streopt::DisjointSets dsu(vs.size());
  for (const Edge& e : edges) {
    if (!id.count(e.u) || !id.count(e.v)) return false;
    if (!dsu.unite(id[e.u], id[e.v])) return false;
  }
  return true;
}

}  // namespace testing_support
