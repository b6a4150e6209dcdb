#include "streopt/instance.hpp"

#include <numeric>
#include <sstream>

#include "streopt/errors.hpp"

namespace streopt {

Cost pow10(int digits) {
  if (digits < 0 || digits > 15) {
    throw ValidationError("unsupported decimal precision " + std::to_string(digits));
  }
  Cost p = 1;
  while (digits-- > 0) p *= 10;
  return p;
}

std::string format_cost(Cost cost, int decimals) {
  const bool negative = cost < 0;
  const Cost magnitude = negative ? -cost : cost;
  const Cost scale = pow10(decimals);
  std::string out = std::to_string(magnitude / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(magnitude % scale);
    out += '.';
    out.append(decimals - frac.size(), '0');
    out += frac;
  }
  return negative ? "-" + out : out;
}

std::string format_ratio(const Ratio& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

StpInstance::StpInstance(int num_vertices, std::vector<Edge> edges,
                         std::vector<Vertex> terminals, int decimals)
    : n_(num_vertices), decimals_(decimals), edges_(std::move(edges)) {
  if (n_ <= 0) throw ValidationError("instance must have at least one vertex");
  if (decimals_ < 0) throw ValidationError("negative decimal precision");
  for (Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw ValidationError("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw ValidationError("self-loop on vertex " + std::to_string(e.u + 1));
    }
    if (e.cost < 0) throw ValidationError("negative edge cost");
    e = make_edge(e.u, e.v, e.cost);
  }
  std::sort(edges_.begin(), edges_.end(), canonical_less);
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      std::ostringstream msg;
      msg << "duplicate edge " << edges_[i].u + 1 << " " << edges_[i].v + 1;
      throw ValidationError(msg.str());
    }
  }
  if (terminals.empty()) throw ValidationError("terminal set is empty");
  terminals_ = VertexSet(n_, {});
  for (Vertex t : terminals) {
    if (t < 0 || t >= n_) {
      throw ValidationError("terminal " + std::to_string(t + 1) + " out of range");
    }
    if (terminals_.contains(t)) {
      throw ValidationError("terminal " + std::to_string(t + 1) + " listed twice");
    }
    terminals_.insert(t);
  }

  incidence_.assign(n_, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    incidence_[edges_[i].u].push_back(i);
    incidence_[edges_[i].v].push_back(i);
  }

  // Connectivity by BFS over the incidence lists.
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (std::size_t id : incidence_[x]) {
      const Vertex y = edges_[id].u == x ? edges_[id].v : edges_[id].u;
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != n_) throw ValidationError("graph is disconnected");
}

std::optional<std::size_t> StpInstance::edge_index(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return std::nullopt;
  const Edge key = make_edge(a, b, 0);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, canonical_less);
  if (it == edges_.end() || it->u != key.u || it->v != key.v) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

Cost StpInstance::edge_cost(Vertex a, Vertex b) const {
  auto id = edge_index(a, b);
  if (!id) {
    throw ValidationError("no edge " + std::to_string(a + 1) + " " +
                          std::to_string(b + 1));
  }
  return edges_[*id].cost;
}

StpInstance StpInstance::with_edge_cost(Vertex a, Vertex b, Cost cost) const {
  auto id = edge_index(a, b);
  if (!id) {
    throw ValidationError("no edge " + std::to_string(a + 1) + " " +
                          std::to_string(b + 1));
  }
  std::vector<Edge> edges = edges_;
  edges[*id].cost = cost;
  return StpInstance(n_, std::move(edges), terminals_.items(), decimals_);
}

StpInstance StpInstance::with_terminals(std::vector<Vertex> terminals) const {
  return StpInstance(n_, edges_, std::move(terminals), decimals_);
}

StpInstance StpInstance::rescaled(int decimals) const {
  if (decimals < decimals_) {
    throw ValidationError("cannot reduce decimal precision");
  }
  const Cost factor = pow10(decimals - decimals_);
  std::vector<Edge> edges = edges_;
  for (Edge& e : edges) e.cost *= factor;
  return StpInstance(n_, std::move(edges), terminals_.items(), decimals);
}

}  // namespace streopt
