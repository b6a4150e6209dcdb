#include "streopt/forest.hpp"

#include <map>

#include "streopt/disjoint_sets.hpp"
#include "streopt/errors.hpp"

namespace streopt {

Forest::Forest(std::vector<Edge> edges, std::vector<Vertex> extra_vertices)
    : edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    e = make_edge(e.u, e.v, e.cost);
    if (e.u == e.v) throw InternalError("forest edge is a self-loop");
    extra_vertices.push_back(e.u);
    extra_vertices.push_back(e.v);
  }
  std::sort(edges_.begin(), edges_.end(), canonical_less);
  std::sort(extra_vertices.begin(), extra_vertices.end());
  extra_vertices.erase(std::unique(extra_vertices.begin(), extra_vertices.end()),
                       extra_vertices.end());
  vertices_ = std::move(extra_vertices);
  degree_.assign(vertices_.size(), 0);

  DisjointSets sets(vertices_.size());
  for (const Edge& e : edges_) {
    const std::size_t a = index_of(e.u);
    const std::size_t b = index_of(e.v);
    if (!sets.unite(a, b)) {
      throw InternalError("edge set is not a forest (" + std::to_string(e.u + 1) +
                          "," + std::to_string(e.v + 1) + ")");
    }
    ++degree_[a];
    ++degree_[b];
  }
}

std::size_t Forest::index_of(Vertex v) const {
  return static_cast<std::size_t>(
      std::lower_bound(vertices_.begin(), vertices_.end(), v) - vertices_.begin());
}

bool Forest::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Forest::contains_edge(Vertex a, Vertex b) const {
  const Edge key = make_edge(a, b, 0);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, canonical_less);
  return it != edges_.end() && it->u == key.u && it->v == key.v;
}

int Forest::degree(Vertex v) const {
  return contains(v) ? degree_[index_of(v)] : 0;
}

std::vector<Vertex> Forest::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (const Edge& e : edges_) {
    if (e.u == v) out.push_back(e.v);
    if (e.v == v) out.push_back(e.u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Forest> Forest::trees() const {
  DisjointSets sets(vertices_.size());
  for (const Edge& e : edges_) sets.unite(index_of(e.u), index_of(e.v));
  std::map<std::size_t, std::size_t> slot;  // root -> output index
  std::vector<std::vector<Vertex>> verts;
  std::vector<std::vector<Edge>> edges;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const std::size_t root = sets.find(i);
    auto [it, fresh] = slot.try_emplace(root, verts.size());
    if (fresh) {
      verts.emplace_back();
      edges.emplace_back();
    }
    verts[it->second].push_back(vertices_[i]);
  }
  for (const Edge& e : edges_) {
    edges[slot[sets.find(index_of(e.u))]].push_back(e);
  }
  std::vector<Forest> out;
  out.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    out.emplace_back(std::move(edges[i]), std::move(verts[i]));
  }
  return out;
}

std::size_t Forest::num_trees() const {
  return vertices_.size() - edges_.size();
}

Forest forest_add(const Forest& forest, std::span<const Edge> added) {
  std::vector<Edge> scan(added.begin(), added.end());
  for (Edge& e : scan) e = make_edge(e.u, e.v, e.cost);
  std::sort(scan.begin(), scan.end(), canonical_less);

  std::vector<Vertex> vertices = forest.vertices();
  for (const Edge& e : scan) {
    vertices.push_back(e.u);
    vertices.push_back(e.v);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  auto idx = [&](Vertex v) {
    return static_cast<std::size_t>(
        std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
  };

  DisjointSets sets(vertices.size());
  std::vector<Edge> edges = forest.edges();
  for (const Edge& e : edges) sets.unite(idx(e.u), idx(e.v));
  for (const Edge& e : scan) {
    if (e.u == e.v || forest.contains_edge(e.u, e.v)) continue;
    if (sets.unite(idx(e.u), idx(e.v))) edges.push_back(e);
  }
  // Endpoints of skipped edges are not part of F + E'.
  std::vector<Vertex> kept = forest.vertices();
  return Forest(std::move(edges), std::move(kept));
}

Forest prune(const Forest& forest, const VertexSet& terminals, const VertexSet& keep) {
  std::vector<Edge> edges = forest.edges();
  std::vector<Vertex> vertices = forest.vertices();
  for (bool changed = true; changed;) {
    changed = false;
    std::map<Vertex, int> degree;
    for (const Edge& e : edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    auto prunable = [&](Vertex v) {
      return !terminals.contains(v) && !keep.contains(v) && degree[v] <= 1;
    };
    auto before = edges.size();
    std::erase_if(edges, [&](const Edge& e) { return prunable(e.u) || prunable(e.v); });
    std::erase_if(vertices, [&](Vertex v) { return prunable(v); });
    changed = edges.size() != before;
  }
  Forest pruned(std::move(edges), std::move(vertices));
  std::vector<Edge> out_edges;
  std::vector<Vertex> out_vertices;
  for (const Forest& tree : pruned.trees()) {
    const bool has_terminal =
        std::any_of(tree.vertices().begin(), tree.vertices().end(),
                    [&](Vertex v) { return terminals.contains(v); });
    if (!has_terminal) continue;
    out_edges.insert(out_edges.end(), tree.edges().begin(), tree.edges().end());
    out_vertices.insert(out_vertices.end(), tree.vertices().begin(),
                        tree.vertices().end());
  }
  return Forest(std::move(out_edges), std::move(out_vertices));
}

Forest forest_remove(const Forest& forest, std::span<const Edge> removed,
                     const VertexSet& terminals, const VertexSet& keep) {
  std::vector<Edge> edges;
  for (const Edge& e : forest.edges()) {
    const bool drop = std::any_of(removed.begin(), removed.end(), [&](const Edge& r) {
      return std::min(r.u, r.v) == e.u && std::max(r.u, r.v) == e.v;
    });
    if (!drop) edges.push_back(e);
  }
  return prune(Forest(std::move(edges), forest.vertices()), terminals, keep);
}

Forest reprice(const Forest& forest, const StpInstance& instance) {
  std::vector<Edge> edges = forest.edges();
  for (Edge& e : edges) e.cost = instance.edge_cost(e.u, e.v);
  return Forest(std::move(edges), forest.vertices());
}

bool spans(const Forest& forest, const VertexSet& vertices) {
  return std::all_of(vertices.items().begin(), vertices.items().end(),
                     [&](Vertex v) { return forest.contains(v); });
}

bool is_steiner_tree(const Forest& forest, const StpInstance& instance) {
  if (!forest.is_tree() || !spans(forest, instance.terminals())) return false;
  for (const Edge& e : forest.edges()) {
    if (!instance.has_edge(e.u, e.v)) return false;
  }
  if (forest.vertices().size() == 1) return true;
  return std::all_of(forest.vertices().begin(), forest.vertices().end(), [&](Vertex v) {
    return forest.degree(v) != 1 || instance.is_terminal(v);
  });
}

}  // namespace streopt
