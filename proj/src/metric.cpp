#include "streopt/metric.hpp"

#include "streopt/errors.hpp"

namespace streopt {

MetricClosure MetricClosure::compute(const StpInstance& instance,
                                     std::optional<Edge> excluded) {
  MetricClosure m;
  const int n = instance.num_vertices();
  m.n_ = n;
  if (excluded) {
    if (!instance.has_edge(excluded->u, excluded->v)) {
      throw ValidationError("excluded edge is not in the graph");
    }
    m.excluded_ = make_edge(excluded->u, excluded->v,
                            instance.edge_cost(excluded->u, excluded->v));
  }
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  m.edge_cost_.assign(nn, kInfinity);
  m.dist_.assign(nn, kInfinity);
  std::vector<int> hops(nn, std::numeric_limits<int>::max() / 4);
  for (Vertex v = 0; v < n; ++v) {
    m.dist_[m.index(v, v)] = 0;
    hops[m.index(v, v)] = 0;
  }
  for (const Edge& e : instance.edges()) {
    if (m.excluded_ && e.u == m.excluded_->u && e.v == m.excluded_->v) continue;
    m.edge_cost_[m.index(e.u, e.v)] = e.cost;
    m.edge_cost_[m.index(e.v, e.u)] = e.cost;
    m.dist_[m.index(e.u, e.v)] = e.cost;
    m.dist_[m.index(e.v, e.u)] = e.cost;
    hops[m.index(e.u, e.v)] = 1;
    hops[m.index(e.v, e.u)] = 1;
  }

  // Floyd-Warshall on (cost, hops) pairs, compared lexicographically.
  for (Vertex k = 0; k < n; ++k) {
    for (Vertex i = 0; i < n; ++i) {
      const Cost dik = m.dist_[m.index(i, k)];
      if (dik >= kInfinity) continue;
      const int hik = hops[m.index(i, k)];
      for (Vertex j = 0; j < n; ++j) {
        const Cost dkj = m.dist_[m.index(k, j)];
        if (dkj >= kInfinity) continue;
        const Cost cand = dik + dkj;
        const int hcand = hik + hops[m.index(k, j)];
        Cost& dij = m.dist_[m.index(i, j)];
        int& hij = hops[m.index(i, j)];
        if (cand < dij || (cand == dij && hcand < hij)) {
          dij = cand;
          hij = hcand;
        }
      }
    }
  }

  // Predecessors: the smallest neighbour u of v lying on an optimal
  // (cost, hops) path. Hop counts strictly decrease, so the chains terminate.
  m.pred_.assign(nn, -1);
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex v = 0; v < n; ++v) {
      if (v == s || m.dist_[m.index(s, v)] >= kInfinity) continue;
      for (Vertex u = 0; u < n; ++u) {
        const Cost c = m.edge_cost_[m.index(u, v)];
        if (c >= kInfinity || m.dist_[m.index(s, u)] >= kInfinity) continue;
        if (m.dist_[m.index(s, u)] + c == m.dist_[m.index(s, v)] &&
            hops[m.index(s, u)] + 1 == hops[m.index(s, v)]) {
          m.pred_[m.index(s, v)] = u;
          break;
        }
      }
    }
  }

  if (m.excluded_) {
    const auto& terminals = instance.terminals().items();
    for (Vertex t : terminals) {
      if (!m.reachable(terminals.front(), t)) {
        throw DisconnectedAfterExclusion(
            "removing edge " + std::to_string(m.excluded_->u + 1) + " " +
            std::to_string(m.excluded_->v + 1) + " disconnects terminal " +
            std::to_string(t + 1));
      }
    }
  }
  return m;
}

std::vector<Vertex> MetricClosure::path(Vertex from, Vertex to) const {
  if (!reachable(from, to)) {
    throw InternalError("no path between " + std::to_string(from + 1) + " and " +
                        std::to_string(to + 1));
  }
  std::vector<Vertex> out{to};
  while (out.back() != from) out.push_back(pred_[index(from, out.back())]);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Edge> MetricClosure::path_edges(Vertex a, Vertex b) const {
  const std::vector<Vertex> p = path(std::min(a, b), std::max(a, b));
  std::vector<Edge> out;
  out.reserve(p.size());
  for (std::size_t i = 1; i < p.size(); ++i) {
    out.push_back(make_edge(p[i - 1], p[i], edge_cost_[index(p[i - 1], p[i])]));
  }
  return out;
}

}  // namespace streopt
