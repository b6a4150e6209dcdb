#pragma once

#include <span>
#include <vector>

#include "streopt/instance.hpp"
#include "streopt/types.hpp"

namespace streopt {

// An acyclic subgraph: a sorted vertex set plus canonically sorted edges.
// Isolated vertices are allowed, which is how forests such as (R, {}) are
// expressed. Edge costs travel with the edges; use reprice() to move a forest
// between cost functions of the same graph.
class Forest {
 public:
  Forest() = default;
  // Throws InternalError if the edges contain a cycle or a repeated pair.
  explicit Forest(std::vector<Edge> edges, std::vector<Vertex> extra_vertices = {});

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Cost cost() const { return total_cost(edges_); }
  bool empty() const { return vertices_.empty(); }

  bool contains(Vertex v) const;
  bool contains_edge(Vertex a, Vertex b) const;
  int degree(Vertex v) const;
  std::vector<Vertex> neighbors(Vertex v) const;

  // Connected components, ordered by their smallest vertex id.
  std::vector<Forest> trees() const;
  std::size_t num_trees() const;
  bool is_tree() const { return !empty() && num_trees() == 1; }

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  std::size_t index_of(Vertex v) const;

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<int> degree_;
};

// F + E': scans E' \ E(F) in canonical order and keeps each edge only if the
// result stays acyclic. Endpoints of kept edges join the vertex set.
Forest forest_add(const Forest& forest, std::span<const Edge> added);

// F - E' followed by pruning: non-terminal leaves are removed repeatedly and
// trees spanning no terminal are discarded. Vertices in `keep` are never
// pruned as leaves, but a tree holding no terminal is still dropped.
Forest forest_remove(const Forest& forest, std::span<const Edge> removed,
                     const VertexSet& terminals, const VertexSet& keep = {});

Forest prune(const Forest& forest, const VertexSet& terminals,
             const VertexSet& keep = {});

// Same edge set with costs taken from `instance`.
Forest reprice(const Forest& forest, const StpInstance& instance);

bool spans(const Forest& forest, const VertexSet& vertices);

// Connected, acyclic, spans R and every leaf is a terminal.
bool is_steiner_tree(const Forest& forest, const StpInstance& instance);

}  // namespace streopt
