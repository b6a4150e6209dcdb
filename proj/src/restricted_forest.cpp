#include "streopt/restricted_forest.hpp"

#include <map>
#include <sstream>

#include "streopt/disjoint_sets.hpp"
#include "streopt/errors.hpp"

namespace streopt {
namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Groups edges that share a non-terminal endpoint.
std::vector<std::vector<Edge>> split_at_terminals(std::span<const Edge> edges,
                                                  const VertexSet& terminals) {
  DisjointSets sets(edges.size());
  std::map<Vertex, std::size_t> first_edge_at;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (Vertex x : {edges[i].u, edges[i].v}) {
      if (terminals.contains(x)) continue;
      auto [it, fresh] = first_edge_at.try_emplace(x, i);
      if (!fresh) sets.unite(it->second, i);
    }
  }
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<Edge>> groups;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [it, fresh] = slot.try_emplace(sets.find(i), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(edges[i]);
  }
  return groups;
}

}  // namespace

std::vector<Vertex> FullComponent::vertices() const {
  std::vector<Vertex> out = terminals;
  out.insert(out.end(), steiner.begin(), steiner.end());
  return sorted_unique(std::move(out));
}

Cost RestrictedForest::cost() const {
  Cost sum = 0;
  for (const FullComponent& c : components) sum += c.cost();
  return sum;
}

std::vector<Vertex> RestrictedForest::vertices() const {
  std::vector<Vertex> out = isolated;
  for (const FullComponent& c : components) {
    auto vs = c.vertices();
    out.insert(out.end(), vs.begin(), vs.end());
  }
  return sorted_unique(std::move(out));
}

bool RestrictedForest::spans(Vertex v) const {
  if (std::find(isolated.begin(), isolated.end(), v) != isolated.end()) return true;
  return occurrences(v) > 0;
}

std::size_t RestrictedForest::max_terminals_per_component() const {
  std::size_t best = 0;
  for (const FullComponent& c : components) best = std::max(best, c.terminals.size());
  return best;
}

int RestrictedForest::occurrences(Vertex v) const {
  int count = 0;
  for (const FullComponent& c : components) {
    auto vs = c.vertices();
    if (std::binary_search(vs.begin(), vs.end(), v)) ++count;
  }
  return count;
}

void RestrictedForest::append(const RestrictedForest& other) {
  components.insert(components.end(), other.components.begin(), other.components.end());
  isolated.insert(isolated.end(), other.isolated.begin(), other.isolated.end());
  isolated = sorted_unique(std::move(isolated));
  pinned.insert(pinned.end(), other.pinned.begin(), other.pinned.end());
  pinned = sorted_unique(std::move(pinned));
}

FullComponent make_component(std::vector<Edge> edges, const VertexSet& terminals) {
  FullComponent c;
  std::vector<Vertex> vs;
  for (Edge& e : edges) {
    e = make_edge(e.u, e.v, e.cost);
    vs.push_back(e.u);
    vs.push_back(e.v);
  }
  std::sort(edges.begin(), edges.end(), canonical_less);
  c.edges = std::move(edges);
  for (Vertex v : sorted_unique(std::move(vs))) {
    (terminals.contains(v) ? c.terminals : c.steiner).push_back(v);
  }
  return c;
}

std::vector<FullComponent> full_components(const Forest& forest,
                                           const VertexSet& terminals) {
  std::vector<FullComponent> out;
  for (auto& group : split_at_terminals(forest.edges(), terminals)) {
    out.push_back(make_component(std::move(group), terminals));
  }
  return out;
}

std::vector<FullComponent> full_components(const RestrictedForest& forest,
                                           const VertexSet& terminals) {
  std::vector<FullComponent> out;
  for (const FullComponent& c : forest.components) {
    for (auto& group : split_at_terminals(c.edges, terminals)) {
      out.push_back(make_component(std::move(group), terminals));
    }
  }
  return out;
}

RestrictedForest as_restricted(const Forest& forest, const VertexSet& terminals,
                               const MetricClosure& metric) {
  RestrictedForest out;
  for (FullComponent& c : full_components(forest, terminals)) {
    for (Edge& e : c.edges) e.cost = metric.dist(e.u, e.v);
    out.components.push_back(std::move(c));
  }
  for (const Forest& tree : forest.trees()) {
    if (tree.edges().empty()) out.isolated.push_back(tree.vertices().front());
  }
  return out;
}

RestrictedForest reprice(const RestrictedForest& forest, const MetricClosure& metric) {
  RestrictedForest out = forest;
  for (FullComponent& c : out.components) {
    for (Edge& e : c.edges) e.cost = metric.dist(e.u, e.v);
  }
  return out;
}

std::vector<std::vector<Vertex>> forest_trees(const RestrictedForest& forest,
                                              const VertexSet& extra) {
  std::vector<Vertex> ids = forest.vertices();
  for (Vertex v : extra.items()) ids.push_back(v);
  ids = sorted_unique(std::move(ids));
  auto idx = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) -
                                    ids.begin());
  };
  DisjointSets sets(ids.size());
  for (const FullComponent& c : forest.components) {
    for (const Edge& e : c.edges) sets.unite(idx(e.u), idx(e.v));
  }
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<Vertex>> groups;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, fresh] = slot.try_emplace(sets.find(i), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(ids[i]);
  }
  return groups;
}

Forest embed_edges(std::span<const Edge> metric_edges, std::vector<Vertex> extra,
                   const StpInstance& instance, const MetricClosure& metric) {
  if (metric.size() != instance.num_vertices()) {
    throw InternalError("metric does not match instance");
  }
  for (const Edge& e : metric_edges) {
    extra.push_back(e.u);
    extra.push_back(e.v);
  }
  Forest out(std::vector<Edge>{}, std::move(extra));
  for (const Edge& e : metric_edges) {
    const std::vector<Edge> path = metric.path_edges(e.u, e.v);
    out = forest_add(out, path);
  }
  return out;
}

Forest embed_to_graph(const RestrictedForest& forest, const StpInstance& instance,
                      const MetricClosure& metric) {
  std::vector<Edge> edges;
  for (const FullComponent& c : forest.components) {
    edges.insert(edges.end(), c.edges.begin(), c.edges.end());
  }
  return embed_edges(edges, forest.vertices(), instance, metric);
}

std::string validate(const RestrictedForest& forest, const VertexSet& terminals) {
  std::ostringstream err;
  for (std::size_t i = 0; i < forest.components.size(); ++i) {
    const FullComponent& c = forest.components[i];
    if (c.edges.empty()) {
      err << "component " << i << " has no edges; ";
      continue;
    }
    std::vector<Vertex> vs = c.vertices();
    if (vs.size() != c.edges.size() + 1) {
      err << "component " << i << " is not a tree over distinct ids; ";
      continue;
    }
    try {
      Forest tree(c.edges);
      if (!tree.is_tree()) err << "component " << i << " is disconnected; ";
      for (Vertex v : vs) {
        const bool pinned = std::find(forest.pinned.begin(), forest.pinned.end(), v) !=
                            forest.pinned.end();
        const bool leaf = tree.degree(v) == 1;
        if (terminals.contains(v) && !leaf) {
          err << "component " << i << " has internal terminal " << v + 1 << "; ";
        }
        if (!terminals.contains(v) && leaf && !pinned) {
          err << "component " << i << " has Steiner leaf " << v + 1 << "; ";
        }
      }
    } catch (const InternalError&) {
      err << "component " << i << " contains a cycle; ";
    }
  }
  return err.str();
}

}  // namespace streopt
