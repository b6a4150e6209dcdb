#include "streopt/harness/oracle.hpp"

#include <numeric>
#include <queue>

namespace streopt {
namespace {

constexpr Cost kUnreached = std::numeric_limits<Cost>::max() / 4;

struct ShortestPaths {
  std::vector<std::vector<Cost>> dist;
  std::vector<std::vector<int>> prev;
};

ShortestPaths all_dijkstra(const StpInstance& instance) {
  const int n = instance.num_vertices();
  std::vector<std::vector<std::pair<int, Cost>>> adj(n);
  for (const Edge& e : instance.edges()) {
    adj[e.u].emplace_back(e.v, e.cost);
    adj[e.v].emplace_back(e.u, e.cost);
  }
  ShortestPaths sp{std::vector<std::vector<Cost>>(n, std::vector<Cost>(n, kUnreached)),
                   std::vector<std::vector<int>>(n, std::vector<int>(n, -1))};
  for (int s = 0; s < n; ++s) {
    auto& dist = sp.dist[s];
    auto& prev = sp.prev[s];
    using Item = std::pair<Cost, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0;
    heap.emplace(0, s);
    while (!heap.empty()) {
      auto [d, x] = heap.top();
      heap.pop();
      if (d > dist[x]) continue;
      for (auto [y, w] : adj[x]) {
        if (d + w < dist[y]) {
          dist[y] = d + w;
          prev[y] = x;
          heap.emplace(dist[y], y);
        }
      }
    }
  }
  return sp;
}

// Prim on the closure restricted to `nodes`; returns cost and closure pairs.
Cost closure_mst(const ShortestPaths& sp, const std::vector<int>& nodes,
                 std::vector<std::pair<int, int>>* pairs) {
  const std::size_t k = nodes.size();
  std::vector<bool> done(k, false);
  std::vector<Cost> key(k, kUnreached);
  std::vector<std::size_t> link(k, 0);
  key[0] = 0;
  Cost total = 0;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (!done[i] && (pick == k || key[i] < key[pick])) pick = i;
    }
    done[pick] = true;
    total += key[pick];
    if (pairs && step > 0) pairs->emplace_back(nodes[link[pick]], nodes[pick]);
    for (std::size_t i = 0; i < k; ++i) {
      const Cost d = sp.dist[nodes[pick]][nodes[i]];
      if (!done[i] && d < key[i]) {
        key[i] = d;
        link[i] = pick;
      }
    }
  }
  return total;
}

int root_of(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

OracleResult oracle_solve(const StpInstance& instance, const OracleLimits& limits) {
  const int n = instance.num_vertices();
  const auto& terminals = instance.terminals().items();
  if (n > limits.max_vertices || static_cast<int>(terminals.size()) > limits.max_terminals) {
    throw OracleCapExceeded("oracle limited to n <= " + std::to_string(limits.max_vertices) +
                            " and |R| <= " + std::to_string(limits.max_terminals));
  }
  const ShortestPaths sp = all_dijkstra(instance);
  std::vector<int> steiner;
  for (int v = 0; v < n; ++v) {
    if (!instance.is_terminal(v)) steiner.push_back(v);
  }

  Cost best = kUnreached;
  std::vector<int> best_nodes;
  for (std::uint32_t mask = 0; mask < (1u << steiner.size()); ++mask) {
    std::vector<int> nodes(terminals.begin(), terminals.end());
    for (std::size_t i = 0; i < steiner.size(); ++i) {
      if (mask >> i & 1) nodes.push_back(steiner[i]);
    }
    const Cost c = closure_mst(sp, nodes, nullptr);
    if (c < best) {
      best = c;
      best_nodes = nodes;
    }
  }

  // Expand the winning closure MST into graph edges, break any cycles and
  // strip non-terminal leaves.
  std::vector<std::pair<int, int>> pairs;
  closure_mst(sp, best_nodes, &pairs);
  std::vector<Edge> raw;
  for (auto [a, b] : pairs) {
    for (int x = b; x != a; x = sp.prev[a][x]) {
      const int y = sp.prev[a][x];
      raw.push_back(make_edge(x, y, instance.edge_cost(x, y)));
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Edge& p, const Edge& q) {
    return std::tie(p.cost, p.u, p.v) < std::tie(q.cost, q.u, q.v);
  });
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<Edge> tree;
  for (const Edge& e : raw) {
    const int a = root_of(parent, e.u);
    const int b = root_of(parent, e.v);
    if (a == b) continue;
    parent[a] = b;
    tree.push_back(e);
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> degree(n, 0);
    for (const Edge& e : tree) ++degree[e.u], ++degree[e.v];
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const Edge& e = tree[i];
      if ((degree[e.u] == 1 && !instance.is_terminal(e.u)) ||
          (degree[e.v] == 1 && !instance.is_terminal(e.v))) {
        tree.erase(tree.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  OracleResult out;
  out.edges = std::move(tree);
  std::sort(out.edges.begin(), out.edges.end(),
            [](const Edge& p, const Edge& q) { return std::tie(p.u, p.v) < std::tie(q.u, q.v); });
  for (const Edge& e : out.edges) out.cost += e.cost;
  if (out.cost != best) throw InternalError("oracle tree does not match its own optimum");
  return out;
}

}  // namespace streopt
