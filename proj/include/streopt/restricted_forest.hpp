#pragma once

#include <vector>

#include "streopt/forest.hpp"
#include "streopt/metric.hpp"

namespace streopt {

// Maximal subtree with terminal leaves and Steiner internals, stored over
// metric edges priced by d.
struct FullComponent {
  std::vector<Edge> edges;
  std::vector<Vertex> terminals;
  std::vector<Vertex> steiner;

  Cost cost() const { return total_cost(edges); }
  std::vector<Vertex> vertices() const;
};

// A forest of the copy graph K_n. The copies themselves are never built: a
// vertex id may occur in several components, and occurrences are identified
// when the forest is embedded back into G. Terminals spanned without any edge
// are listed in `isolated`. `pinned` names Steiner vertices that a pinned
// restriction was asked to keep and which may therefore sit at a leaf.
struct RestrictedForest {
  std::vector<FullComponent> components;
  std::vector<Vertex> isolated;
  std::vector<Vertex> pinned;

  Cost cost() const;
  // Sorted union of all vertex ids.
  std::vector<Vertex> vertices() const;
  bool spans(Vertex v) const;
  std::size_t max_terminals_per_component() const;
  // Number of components in which v occurs.
  int occurrences(Vertex v) const;

  // Appends another forest (F + F' in copy-graph semantics).
  void append(const RestrictedForest& other);
};

// Classifies the vertices of a component edge list against a terminal set.
FullComponent make_component(std::vector<Edge> edges, const VertexSet& terminals);

// Splits a forest of G at its terminals. The union of the returned edge lists
// is exactly E(F).
std::vector<FullComponent> full_components(const Forest& forest,
                                           const VertexSet& terminals);
std::vector<FullComponent> full_components(const RestrictedForest& forest,
                                           const VertexSet& terminals);

// Views a forest of G as a forest of K_n priced by d (so d(F) <= c(F)).
RestrictedForest as_restricted(const Forest& forest, const VertexSet& terminals,
                               const MetricClosure& metric);

// Re-prices every metric edge with another metric over the same vertex ids.
RestrictedForest reprice(const RestrictedForest& forest, const MetricClosure& metric);

// Vertex groups of the trees of F once repeated ids are identified, plus a
// singleton for each vertex of `extra` that F does not span. Groups are sorted
// and ordered by smallest member.
std::vector<std::vector<Vertex>> forest_trees(const RestrictedForest& forest,
                                              const VertexSet& extra);

// Replaces every metric edge by its canonical shortest path and adds it with
// forest_add, component by component. The result spans every vertex id of the
// input and costs at most forest.cost() when priced by the same metric.
Forest embed_to_graph(const RestrictedForest& forest, const StpInstance& instance,
                      const MetricClosure& metric);

// Same for a bare list of metric edges; `extra` vertices are kept even when
// no edge touches them.
Forest embed_edges(std::span<const Edge> metric_edges, std::vector<Vertex> extra,
                   const StpInstance& instance, const MetricClosure& metric);

// Checks the structural invariants; returns an empty string when valid.
std::string validate(const RestrictedForest& forest, const VertexSet& terminals);

}  // namespace streopt
