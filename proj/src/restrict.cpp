#include "streopt/restrict.hpp"

#include <array>
#include <map>
#include <optional>

#include "streopt/errors.hpp"

namespace streopt {
namespace {

// One full component turned into a rooted binary tree. Degree-2 Steiner
// vertices are contracted into single edges and Steiner vertices with more
// than two children become chains of copies joined by 0-cost edges.
class BinaryComponent {
 public:
  BinaryComponent(const FullComponent& comp, const VertexSet& terminals, Vertex root)
      : terminals_(terminals) {
    for (const Edge& e : comp.edges) {
      adj_[e.u].emplace_back(e.v, e.cost);
      adj_[e.v].emplace_back(e.u, e.cost);
    }
    for (auto& [v, list] : adj_) std::sort(list.begin(), list.end());
    nodes_.push_back({root, -1, {-1, -1}, 0, 0});
    const auto& [first, cost] = adj_.at(root).front();
    const int child = build(0, root, first, cost);
    nodes_[0].child[0] = child;
    finish();
  }

  // Pieces for cut offset j (cuts at internal depths congruent to j mod r).
  std::vector<std::vector<Edge>> pieces(int j, int r, const MetricClosure& metric) const {
    std::vector<std::vector<Edge>> out;
    std::vector<int> tops{0};
    while (!tops.empty()) {
      const int top = tops.back();
      tops.pop_back();
      std::vector<Edge> edges;
      std::vector<int> stack{top};
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int c : nodes_[x].child) {
          if (c < 0) continue;
          if (nodes_[c].id != nodes_[x].id) {
            edges.push_back(metric.metric_edge(nodes_[x].id, nodes_[c].id));
          }
          if (!internal(c)) continue;
          if (nodes_[c].depth % r == j % r) {
            edges.push_back(metric.metric_edge(nodes_[c].id, leaf_of_[right_[c]]));
            tops.push_back(c);
          } else {
            stack.push_back(c);
          }
        }
      }
      out.push_back(std::move(edges));
    }
    return out;
  }

  int max_depth() const {
    int d = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (internal(static_cast<int>(i))) d = std::max(d, nodes_[i].depth);
    }
    return d;
  }

 private:
  struct Node {
    Vertex id;
    int parent;
    std::array<int, 2> child;
    Cost up;
    int depth;
  };

  bool internal(int x) const { return nodes_[x].child[1] >= 0; }

  int add_node(Vertex id, int parent, Cost up) {
    nodes_.push_back({id, parent, {-1, -1}, up, nodes_[parent].depth + 1});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int build(int parent, Vertex from, Vertex x, Cost acc) {
    while (!terminals_.contains(x) && adj_.at(x).size() == 2) {
      const auto& list = adj_.at(x);
      const auto& [next, cost] = list[0].first == from ? list[1] : list[0];
      acc += cost;
      from = x;
      x = next;
    }
    const int node = add_node(x, parent, acc);
    std::vector<std::pair<Vertex, Cost>> kids;
    for (const auto& nc : adj_.at(x)) {
      if (nc.first != from) kids.push_back(nc);
    }
    if (terminals_.contains(x)) {
      if (!kids.empty()) throw InternalError("terminal inside a full component");
      return node;
    }
    if (kids.size() < 2) throw InternalError("Steiner leaf inside a full component");
    int current = node;
    for (std::size_t i = 0; i + 2 < kids.size(); ++i) {
      const int c = build(current, x, kids[i].first, kids[i].second);
      nodes_[current].child[0] = c;
      const int copy = add_node(x, current, 0);
      nodes_[current].child[1] = copy;
      current = copy;
    }
    const auto& a = kids[kids.size() - 2];
    const auto& b = kids[kids.size() - 1];
    const int ca = build(current, x, a.first, a.second);
    nodes_[current].child[0] = ca;
    const int cb = build(current, x, b.first, b.second);
    nodes_[current].child[1] = cb;
    return node;
  }

  // Left child = cheaper descent; P(v) leaves v through the other child and
  // then descends left, so the P paths are edge-disjoint.
  void finish() {
    const std::size_t n = nodes_.size();
    desc_.assign(n, 0);
    leaf_of_.assign(n, -1);
    right_.assign(n, -1);
    for (int x = static_cast<int>(n) - 1; x >= 1; --x) {
      if (!internal(x)) {
        leaf_of_[x] = nodes_[x].id;
        continue;
      }
      const int a = nodes_[x].child[0];
      const int b = nodes_[x].child[1];
      const Cost ca = nodes_[a].up + desc_[a];
      const Cost cb = nodes_[b].up + desc_[b];
      const int left = ca <= cb ? a : b;
      right_[x] = left == a ? b : a;
      desc_[x] = std::min(ca, cb);
      leaf_of_[x] = leaf_of_[left];
    }
  }

  const VertexSet& terminals_;
  std::map<Vertex, std::vector<std::pair<Vertex, Cost>>> adj_;
  std::vector<Node> nodes_;
  std::vector<Cost> desc_;
  std::vector<Vertex> leaf_of_;
  std::vector<int> right_;
};

std::vector<FullComponent> restrict_component(const FullComponent& comp,
                                              const VertexSet& terminals, int r,
                                              std::optional<Vertex> preferred_root,
                                              const MetricClosure& metric) {
  if (comp.terminals.size() <= pow2_saturating(r)) {
    std::vector<Edge> edges;
    for (const Edge& e : comp.edges) edges.push_back(metric.metric_edge(e.u, e.v));
    return {make_component(std::move(edges), terminals)};
  }
  Vertex root = comp.terminals.front();
  if (preferred_root &&
      std::find(comp.terminals.begin(), comp.terminals.end(), *preferred_root) !=
          comp.terminals.end()) {
    root = *preferred_root;
  }
  const BinaryComponent binary(comp, terminals, root);
  const int offsets = std::min(r, binary.max_depth() + 1);
  std::vector<std::vector<Edge>> best;
  Cost best_cost = kInfinity;
  for (int j = 1; j <= std::max(offsets, 1); ++j) {
    auto pieces = binary.pieces(j, r, metric);
    Cost cost = 0;
    for (const auto& p : pieces) cost += total_cost(p);
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(pieces);
    }
  }
  std::vector<FullComponent> out;
  for (auto& p : best) out.push_back(make_component(std::move(p), terminals));
  return out;
}

int incident_edges(const RestrictedForest& forest, Vertex v) {
  int count = 0;
  for (const FullComponent& c : forest.components) {
    for (const Edge& e : c.edges) count += (e.u == v) + (e.v == v);
  }
  return count;
}

// Core construction. `pin` is a Steiner vertex of degree <= 2 that is handled
// as a terminal and reclassified at the end.
RestrictionResult run(const Forest& tree, const VertexSet& terminals, const Ratio& xi,
                      const MetricClosure& metric, bool pinned_k,
                      std::optional<Vertex> preferred_root, std::optional<Vertex> pin) {
  const int r = ceil_inverse(xi);
  RestrictionResult out;
  out.k = pow2_saturating(pinned_k ? r + 2 : r);
  out.input_cost = tree.cost();

  VertexSet terms;
  for (Vertex v : terminals.items()) {
    if (tree.contains(v)) terms.insert(v);
  }
  if (pin) terms.insert(*pin);
  const Forest pruned = prune(tree, terms);
  if (pruned.edges().empty() && pruned.vertices().size() > 1) {
    throw InternalError("restriction input is not a tree");
  }

  RestrictedForest& forest = out.forest;
  for (const FullComponent& comp : full_components(pruned, terms)) {
    for (FullComponent& piece : restrict_component(comp, terms, r, preferred_root, metric)) {
      forest.components.push_back(std::move(piece));
    }
  }
  for (Vertex t : terms.items()) {
    if (!forest.spans(t)) forest.isolated.push_back(t);
  }

  if (pin) {
    const Vertex v = *pin;
    VertexSet plain = terms;
    plain.erase(v);
    std::vector<Edge> merged;
    std::vector<FullComponent> rest;
    std::size_t at = forest.components.size();
    for (std::size_t i = 0; i < forest.components.size(); ++i) {
      const FullComponent& c = forest.components[i];
      const auto vs = c.vertices();
      if (std::binary_search(vs.begin(), vs.end(), v)) {
        merged.insert(merged.end(), c.edges.begin(), c.edges.end());
        at = std::min(at, rest.size());
      } else {
        rest.push_back(c);
      }
    }
    if (!merged.empty()) {
      const bool leaf = std::count_if(merged.begin(), merged.end(), [v](const Edge& e) {
                          return e.u == v || e.v == v;
                        }) == 1;
      rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at),
                  make_component(std::move(merged), plain));
      if (leaf) forest.pinned.push_back(v);
    } else {
      forest.pinned.push_back(v);
    }
    forest.components = std::move(rest);
    if (forest.occurrences(v) > 4) {
      throw InternalError("pinned vertex occurs in more than 4 components");
    }
    terms = plain;
  }

  out.restricted_cost = forest.cost();
  const __int128 lhs = static_cast<__int128>(out.restricted_cost) * xi.denominator();
  const __int128 rhs =
      static_cast<__int128>(out.input_cost) * (xi.denominator() + xi.numerator());
  if (lhs > rhs) {
    throw CostBoundViolated("restriction costs " + std::to_string(out.restricted_cost) +
                            " against input " + std::to_string(out.input_cost));
  }
  if (forest.max_terminals_per_component() > out.k) {
    throw InternalError("restricted component exceeds k terminals");
  }
  for (Vertex v : pruned.vertices()) {
    if (!terms.contains(v) && pruned.degree(v) >= 3 && !forest.spans(v)) {
      throw InternalError("restriction dropped a Steiner vertex of degree >= 3");
    }
    if (terms.contains(v) && pruned.degree(v) == 2 && incident_edges(forest, v) > 4) {
      throw InternalError("terminal of degree 2 has degree > 4 after restriction");
    }
  }
  const std::string problems = validate(forest, terms);
  if (!problems.empty()) throw InternalError("invalid restriction: " + problems);
  return out;
}

}  // namespace

int ceil_inverse(const Ratio& xi) {
  if (xi <= Ratio(0)) throw ValidationError("xi must be positive");
  const auto p = xi.numerator();
  const auto q = xi.denominator();
  const auto value = (q + p - 1) / p;
  if (value > 1'000'000) throw ValidationError("xi is too small");
  return static_cast<int>(value);
}

std::uint64_t pow2_saturating(int exponent) {
  if (exponent >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << exponent;
}

RestrictionResult restricted_st(const Forest& tree, const VertexSet& terminals,
                                const Ratio& xi, const MetricClosure& metric) {
  return run(tree, terminals, xi, metric, false, std::nullopt, std::nullopt);
}

RestrictionResult restricted_st_pinned(const Forest& tree, const VertexSet& terminals,
                                       const Ratio& xi, Vertex v,
                                       const MetricClosure& metric) {
  if (!tree.contains(v)) {
    throw VertexNotInSolution("vertex " + std::to_string(v + 1) +
                              " is not in the solution");
  }
  VertexSet keep;
  keep.insert(v);
  const Forest pruned = prune(tree, terminals, keep);
  RestrictionResult out =
      terminals.contains(v) || pruned.degree(v) >= 3
          ? run(pruned, terminals, xi, metric, true, v, std::nullopt)
          : run(pruned, terminals, xi, metric, true, v, v);
  out.input_cost = tree.cost();
  return out;
}

}  // namespace streopt
