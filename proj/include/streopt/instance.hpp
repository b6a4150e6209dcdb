#pragma once

#include <optional>
#include <span>
#include <vector>

#include "streopt/types.hpp"

namespace streopt {

// A Steiner tree problem instance: connected undirected graph, exact
// non-negative edge costs and a non-empty terminal set. Vertex ids are 0-based
// internally; the STP reader/writer shifts them to SteinLib's 1-based ids.
class StpInstance {
 public:
  StpInstance(int num_vertices, std::vector<Edge> edges,
              std::vector<Vertex> terminals, int decimals = 0);

  int num_vertices() const { return n_; }
  std::span<const Edge> edges() const { return edges_; }
  const VertexSet& terminals() const { return terminals_; }
  bool is_terminal(Vertex v) const { return terminals_.contains(v); }

  // Number of decimal digits folded into the integer costs.
  int decimals() const { return decimals_; }

  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;
  bool has_edge(Vertex a, Vertex b) const { return edge_index(a, b).has_value(); }
  Cost edge_cost(Vertex a, Vertex b) const;

  const std::vector<std::vector<std::size_t>>& incidence() const {
    return incidence_;
  }

  StpInstance with_edge_cost(Vertex a, Vertex b, Cost cost) const;
  StpInstance with_terminals(std::vector<Vertex> terminals) const;
  // Multiplies every cost by 10^(decimals - this->decimals()).
  StpInstance rescaled(int decimals) const;

  friend bool operator==(const StpInstance& a, const StpInstance& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ &&
           a.terminals_ == b.terminals_ && a.decimals_ == b.decimals_;
  }

 private:
  int n_;
  int decimals_;
  std::vector<Edge> edges_;
  VertexSet terminals_;
  std::vector<std::vector<std::size_t>> incidence_;
};

Cost pow10(int digits);

}  // namespace streopt
