#include "streopt/reopt.hpp"

#include <map>
#include <queue>

#include "streopt/errors.hpp"

namespace streopt {
namespace {

BigInt pow2(int exponent) { return BigInt(1) << exponent; }

// Adjacency of a tree with BFS parent lookups.
class TreeIndex {
 public:
  explicit TreeIndex(const Forest& tree) : tree_(tree) {
    for (Vertex v : tree.vertices()) adj_[v];
    for (const Edge& e : tree.edges()) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& [v, list] : adj_) std::sort(list.begin(), list.end());
  }

  std::map<Vertex, Vertex> parents_from(Vertex root) const {
    std::map<Vertex, Vertex> parent{{root, root}};
    std::queue<Vertex> queue;
    queue.push(root);
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop();
      for (Vertex y : adj_.at(x)) {
        if (parent.try_emplace(y, x).second) queue.push(y);
      }
    }
    return parent;
  }

  PathCandidate path(const std::map<Vertex, Vertex>& parent, Vertex root, Vertex to,
                     const VertexSet& terminals) const {
    PathCandidate p;
    for (Vertex x = to;; x = parent.at(x)) {
      p.vertices.push_back(x);
      if (x == root) break;
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    for (Vertex x : p.vertices) {
      if (!terminals.contains(x) && tree_.degree(x) >= 3) ++p.steiner_deg3;
    }
    p.cost = total_cost(p.edges(tree_));
    return p;
  }

 private:
  const Forest& tree_;
  std::map<Vertex, std::vector<Vertex>> adj_;
};

struct Attachment {
  Vertex anchor;
  Forest tree;
};

// Trees of S - E(P) that hold a terminal, each pruned but keeping the one
// vertex it shares with P.
std::vector<Attachment> attachment_trees(const Forest& tree, const PathCandidate& path,
                                         const VertexSet& terminals) {
  std::vector<Edge> cut = path.edges(tree);
  std::vector<Edge> rest;
  for (const Edge& e : tree.edges()) {
    if (!std::binary_search(cut.begin(), cut.end(), e, canonical_less)) rest.push_back(e);
  }
  std::vector<Vertex> on_path = path.vertices;
  std::sort(on_path.begin(), on_path.end());
  std::vector<Attachment> out;
  for (const Forest& t : Forest(rest, tree.vertices()).trees()) {
    const auto& vs = t.vertices();
    if (std::none_of(vs.begin(), vs.end(), [&](Vertex v) { return terminals.contains(v); })) {
      continue;
    }
    std::vector<Vertex> anchors;
    std::set_intersection(vs.begin(), vs.end(), on_path.begin(), on_path.end(),
                          std::back_inserter(anchors));
    if (anchors.size() != 1) throw InternalError("attachment tree does not meet P once");
    VertexSet keep;
    keep.insert(anchors.front());
    out.push_back({anchors.front(), prune(t, terminals, keep)});
  }
  return out;
}

struct Context {
  StpInstance modified;
  MetricClosure metric;  // M' over the modified instance
};

Context context_for(const ScenarioFile& task) {
  StpInstance modified = apply_modification(task.base, task.modification);
  MetricClosure metric = MetricClosure::compute(modified);
  return {std::move(modified), std::move(metric)};
}

void expect(const ScenarioFile& task, Scenario s) {
  if (scenario_of(task.modification) != s) {
    throw ValidationError("scenario is " + modification_kind(task.modification) +
                          ", expected " + scenario_name(s));
  }
}

BuildOptions build_options(const ReoptOptions& options) {
  return BuildOptions{options.h_cap, options.exact};
}

void finish(ReoptResult& out, const ApproxParams& params, const ReoptOptions& options) {
  out.h_theoretical = params.h(out.scenario);
  out.h_effective = out.h_theoretical;
  if (options.h_cap && BigInt(*options.h_cap) < out.h_theoretical) {
    out.h_effective = *options.h_cap;
  }
  out.mode = out.h_effective < out.h_theoretical ? "heuristic" : "guaranteed";
  out.cost = out.tree.cost();
}

Edge modified_edge(const Modification& mod) {
  if (const auto* inc = std::get_if<EdgeIncrease>(&mod)) return make_edge(inc->u, inc->v, 0);
  const auto& dec = std::get<EdgeDecrease>(mod);
  return make_edge(dec.u, dec.v, 0);
}

}  // namespace

Scenario scenario_of(const Modification& mod) {
  switch (mod.index()) {
    case 0: return Scenario::kEdgeIncrease;
    case 1: return Scenario::kEdgeDecrease;
    case 2: return Scenario::kTerminalAdd;
    default: return Scenario::kTerminalRemove;
  }
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kTerminalAdd: return "terminal-add";
    case Scenario::kEdgeIncrease: return "edge-inc";
    case Scenario::kTerminalRemove: return "terminal-remove";
    case Scenario::kEdgeDecrease: return "edge-dec";
  }
  return "?";
}

BigInt ApproxParams::h(Scenario s) const {
  switch (s) {
    case Scenario::kTerminalAdd: return pow2(2 * ell * r);
    case Scenario::kEdgeIncrease: return pow2(2 * (1 + r) * ell);
    case Scenario::kTerminalRemove: return BigInt(1 + r) * pow2(2 * (1 + r) * ell);
    case Scenario::kEdgeDecrease: return BigInt(2 * (1 + r)) * pow2(2 * (2 + r) * ell);
  }
  return 0;
}

ApproxParams make_params(const Ratio& epsilon) {
  if (epsilon <= Ratio(0)) throw ValidationError("epsilon must be positive");
  ApproxParams p;
  p.epsilon = epsilon;
  p.xi = epsilon / 10;
  p.r = ceil_inverse(p.xi);
  p.ell = ceil_inverse(epsilon / 2);
  p.k_plain = pow2_saturating(p.r);
  p.k_pinned = pow2_saturating(p.r + 2);
  return p;
}

Forest two_approx(const StpInstance& instance, const MetricClosure& metric) {
  const auto& terminals = instance.terminals().items();
  const std::size_t k = terminals.size();
  std::vector<char> in(k, 0);
  std::vector<Cost> best(k, kInfinity);
  std::vector<std::size_t> via(k, 0);
  std::vector<Edge> edges;
  best[0] = 0;
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t pick = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (!in[i] && (pick == k || best[i] < best[pick])) pick = i;
    }
    in[pick] = 1;
    if (round > 0) edges.push_back(metric.metric_edge(terminals[via[pick]], terminals[pick]));
    for (std::size_t i = 0; i < k; ++i) {
      const Cost d = metric.dist(terminals[pick], terminals[i]);
      if (!in[i] && d < best[i]) {
        best[i] = d;
        via[i] = pick;
      }
    }
  }
  return prune(embed_edges(edges, terminals, instance, metric), instance.terminals());
}

std::vector<Edge> PathCandidate::edges(const Forest& tree) const {
  std::vector<Edge> out;
  const auto& all = tree.edges();
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Edge key = make_edge(vertices[i - 1], vertices[i], 0);
    auto it = std::lower_bound(all.begin(), all.end(), key, canonical_less);
    if (it == all.end() || it->u != key.u || it->v != key.v) {
      throw InternalError("path leaves the tree");
    }
    out.push_back(*it);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

PathCandidate find_pstar(const Forest& tree, Vertex t, int bound,
                         const VertexSet& terminals) {
  if (!tree.contains(t)) {
    throw VertexNotInSolution("vertex " + std::to_string(t + 1) + " is not in the solution");
  }
  const TreeIndex index(tree);
  const auto parent = index.parents_from(t);
  std::optional<PathCandidate> best;
  for (const auto& [w, unused] : parent) {
    PathCandidate p = index.path(parent, t, w, terminals);
    if (p.steiner_deg3 > bound) continue;
    if (!best || p.hops() > best->hops()) best = std::move(p);
  }
  if (!best) {
    // Only possible when t itself already exceeds the bound.
    best = index.path(parent, t, t, terminals);
  }
  return *best;
}

std::vector<PathCandidate> enumerate_path_set(const Forest& tree, int bound,
                                              const VertexSet& terminals) {
  const TreeIndex index(tree);
  std::vector<PathCandidate> out;
  const auto& vs = tree.vertices();
  for (std::size_t j = 0; j < vs.size(); ++j) {
    const auto parent = index.parents_from(vs[j]);
    for (std::size_t i = 0; i < j; ++i) {
      PathCandidate p = index.path(parent, vs[j], vs[i], terminals);
      if (p.steiner_deg3 > bound) continue;
      std::reverse(p.vertices.begin(), p.vertices.end());
      out.push_back(std::move(p));
    }
  }
  return out;
}

ReoptResult reopt_terminal_added(const ScenarioFile& task, const ApproxParams& params,
                                 const ReoptOptions& options) {
  expect(task, Scenario::kTerminalAdd);
  const Vertex t = std::get<TerminalAdd>(task.modification).t;
  const Context ctx = context_for(task);
  ReoptResult out;
  out.scenario = Scenario::kTerminalAdd;

  RestrictionResult restricted =
      restricted_st(task.solution, task.base.terminals(), params.xi, ctx.metric);
  RestrictedForest forest = std::move(restricted.forest);
  if (!forest.spans(t)) {
    forest.isolated.push_back(t);
    std::sort(forest.isolated.begin(), forest.isolated.end());
  }
  BuildResult built = build_st(ctx.modified, forest, params.h(out.scenario), ctx.metric,
                               build_options(options));
  out.tree = std::move(built.tree);
  out.audits.push_back(std::move(built.audit));
  finish(out, params, options);
  return out;
}

ReoptResult reopt_edge_increased(const ScenarioFile& task, const ApproxParams& params,
                                 const ReoptOptions& options) {
  expect(task, Scenario::kEdgeIncrease);
  const Edge e = modified_edge(task.modification);
  const Context ctx = context_for(task);
  ReoptResult out;
  out.scenario = Scenario::kEdgeIncrease;
  const Forest repriced = reprice(task.solution, ctx.modified);

  if (!task.solution.contains_edge(e.u, e.v)) {
    out.tree = repriced;
    out.notes.push_back("modified edge is not in S; S returned unchanged");
    finish(out, params, options);
    return out;
  }

  const VertexSet& terminals = task.base.terminals();
  VertexSet keep;
  keep.insert(e.u);
  keep.insert(e.v);
  const Forest split = forest_remove(task.solution, std::vector<Edge>{e}, terminals, keep);
  RestrictedForest forest;
  for (const Forest& side : split.trees()) {
    const Vertex anchor = side.contains(e.u) ? e.u : e.v;
    std::vector<Vertex> side_terminals;
    for (Vertex v : side.vertices()) {
      if (terminals.contains(v)) side_terminals.push_back(v);
    }
    const VertexSet side_set(task.base.num_vertices(), side_terminals);
    std::optional<MetricClosure> excluded;
    try {
      excluded = MetricClosure::compute(task.base.with_terminals(side_terminals), e);
    } catch (const DisconnectedAfterExclusion& err) {
      out.notes.push_back(std::string(err.what()) + "; restricting with the modified metric");
    }
    const MetricClosure& metric = excluded ? *excluded : ctx.metric;
    const Forest priced = excluded ? side : reprice(side, ctx.modified);
    forest.append(restricted_st_pinned(priced, side_set, params.xi, anchor, metric).forest);
  }
  BuildResult built = build_st(ctx.modified, forest, params.h(out.scenario), ctx.metric,
                               build_options(options));
  out.audits.push_back(std::move(built.audit));
  if (repriced.cost() <= built.tree.cost()) {
    out.tree = repriced;
    out.notes.push_back("S is at least as cheap as the rebuilt tree");
  } else {
    out.tree = std::move(built.tree);
  }
  finish(out, params, options);
  return out;
}

ReoptResult reopt_terminal_removed(const ScenarioFile& task, const ApproxParams& params,
                                   const ReoptOptions& options) {
  expect(task, Scenario::kTerminalRemove);
  if (task.rho != Ratio(1)) throw RhoNotOne("terminal-remove requires rho = 1");
  const Vertex t = std::get<TerminalRemove>(task.modification).t;
  const Context ctx = context_for(task);
  const VertexSet& reduced = ctx.modified.terminals();
  ReoptResult out;
  out.scenario = Scenario::kTerminalRemove;

  const PathCandidate pstar = find_pstar(task.solution, t, 1 + params.r, reduced);
  RestrictedForest forest;
  for (const Attachment& a : attachment_trees(task.solution, pstar, reduced)) {
    forest.append(restricted_st_pinned(a.tree, task.base.terminals(), params.xi, a.anchor,
                                       ctx.metric)
                      .forest);
  }
  BuildResult built = build_st(ctx.modified, forest, params.h(out.scenario), ctx.metric,
                               build_options(options));
  out.audits.push_back(std::move(built.audit));
  Forest pruned = prune(task.solution, reduced);
  if (pruned.cost() <= built.tree.cost()) {
    out.tree = std::move(pruned);
    out.notes.push_back("S pruned to the new terminal set is at least as cheap");
  } else {
    out.tree = std::move(built.tree);
  }
  finish(out, params, options);
  return out;
}

ReoptResult reopt_edge_decreased(const ScenarioFile& task, const ApproxParams& params,
                                 const ReoptOptions& options) {
  expect(task, Scenario::kEdgeDecrease);
  if (task.rho != Ratio(1)) throw RhoNotOne("edge-dec requires rho = 1");
  const Edge e = modified_edge(task.modification);
  const Context ctx = context_for(task);
  const VertexSet& terminals = task.base.terminals();
  ReoptResult out;
  out.scenario = Scenario::kEdgeDecrease;
  out.notes.push_back("attachment trees are the trees of S - P");

  std::optional<MetricClosure> excluded;
  try {
    excluded = MetricClosure::compute(task.base, e);
  } catch (const DisconnectedAfterExclusion& err) {
    out.notes.push_back(std::string(err.what()) + "; restricting with the modified metric");
  }

  SwapEngine engine(ctx.modified, ctx.metric, build_options(options));
  const BigInt h = params.h(out.scenario);
  std::optional<Forest> best;
  for (const PathCandidate& path :
       enumerate_path_set(task.solution, 2 * (1 + params.r), terminals)) {
    RestrictedForest forest;
    for (const Attachment& a : attachment_trees(task.solution, path, terminals)) {
      const bool use_modified = !excluded || a.tree.contains_edge(e.u, e.v);
      const Forest priced = use_modified ? reprice(a.tree, ctx.modified) : a.tree;
      forest.append(restricted_st_pinned(priced, terminals, params.xi, a.anchor,
                                         use_modified ? ctx.metric : *excluded)
                        .forest);
    }
    BuildResult built = engine.run(forest, h);
    if (!best || built.tree.cost() < best->cost()) best = std::move(built.tree);
    out.audits.push_back(std::move(built.audit));
  }
  const Forest repriced = reprice(task.solution, ctx.modified);
  if (!best || repriced.cost() <= best->cost()) {
    out.tree = repriced;
    out.notes.push_back("S is at least as cheap as every rebuilt tree");
  } else {
    out.tree = std::move(*best);
  }
  finish(out, params, options);
  return out;
}

ReoptResult reoptimize(const ScenarioFile& task, const Ratio& epsilon,
                       const ReoptOptions& options) {
  const ApproxParams params = make_params(epsilon);
  if (task.rho < Ratio(1)) throw ValidationError("rho must be at least 1");
  const Scenario s = scenario_of(task.modification);
  if (epsilon > Ratio(1) || task.rho > Ratio(2)) {
    const Context ctx = context_for(task);
    ReoptResult out;
    out.scenario = s;
    out.tree = two_approx(ctx.modified, ctx.metric);
    out.cost = out.tree.cost();
    out.mode = "two-approx";
    out.h_theoretical = params.h(s);
    out.h_effective = 0;
    out.notes.push_back("epsilon > 1 or rho > 2: the 2-approximation already meets rho + epsilon");
    return out;
  }
  switch (s) {
    case Scenario::kTerminalAdd: return reopt_terminal_added(task, params, options);
    case Scenario::kEdgeIncrease: return reopt_edge_increased(task, params, options);
    case Scenario::kTerminalRemove: return reopt_terminal_removed(task, params, options);
    case Scenario::kEdgeDecrease: return reopt_edge_decreased(task, params, options);
  }
  throw InternalError("unknown scenario");
}

}  // namespace streopt
