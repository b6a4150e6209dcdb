#include "streopt/buildst.hpp"

#include <nlohmann/json.hpp>

#include "streopt/errors.hpp"

namespace streopt {
namespace {

// Next s-subset of {0..m-1} in colex order; false after the last one.
bool next_colex(std::vector<std::size_t>& c, std::size_t m) {
  const std::size_t s = c.size();
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t limit = i + 1 < s ? c[i + 1] : m;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = j;
      return true;
    }
  }
  return false;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

}  // namespace

std::string BuildAudit::to_jsonl() const {
  std::string out;
  nlohmann::ordered_json head;
  head["h_theoretical"] = h_theoretical.str();
  head["h_effective"] = h_effective.str();
  head["mode"] = capped() ? "heuristic" : "guaranteed";
  head["components"] = components;
  head["from_scratch"] = from_scratch;
  head["candidates"] = candidates.size();
  if (!from_scratch && !candidates.empty()) head["chosen"] = chosen;
  out += head.dump() + "\n";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const CandidateRecord& c = candidates[i];
    nlohmann::ordered_json rec;
    rec["candidate"] = i;
    rec["removed"] = c.removed;
    rec["q"] = c.trees;
    rec["forest_cost"] = c.forest_cost;
    rec["connect_cost"] = c.connect_cost;
    rec["total"] = c.total;
    rec["embedded_cost"] = c.embedded_cost;
    out += rec.dump() + "\n";
  }
  return out;
}

SwapEngine::SwapEngine(const StpInstance& instance, const MetricClosure& metric,
                       BuildOptions options)
    : instance_(instance), metric_(metric), options_(options) {
  if (metric.size() != instance.num_vertices()) {
    throw InternalError("metric does not match instance");
  }
}

const Forest& SwapEngine::from_scratch() {
  if (!scratch_) {
    const auto& terminals = instance_.terminals().items();
    std::vector<std::vector<Vertex>> groups;
    for (Vertex t : terminals) groups.push_back({t});
    const ConnectResult h = connect(metric_, groups, options_.exact);
    Forest tree =
        prune(embed_edges(h.added, terminals, instance_, metric_), instance_.terminals());
    if (!tree.is_tree() || tree.cost() != h.cost) {
      throw InternalError("from-scratch solution is inconsistent");
    }
    scratch_ = std::move(tree);
  }
  return *scratch_;
}

BuildResult SwapEngine::run(const RestrictedForest& forest, const BigInt& h) {
  if (h < 1) throw ValidationError("h must be at least 1");
  const VertexSet& terminals = instance_.terminals();
  BuildResult out;
  BuildAudit& audit = out.audit;
  audit.h_theoretical = h;
  audit.h_effective = h;
  if (options_.h_cap && BigInt(*options_.h_cap) < h) audit.h_effective = *options_.h_cap;
  audit.components = forest.components.size();

  const std::size_t m = forest.components.size();
  if (BigInt(m) < audit.h_effective) {
    audit.from_scratch = true;
    out.tree = from_scratch();
    out.cost = out.tree.cost();
    return out;
  }

  const RestrictedForest priced = reprice(forest, metric_);
  const std::size_t limit = static_cast<std::size_t>(audit.h_effective);  // <= m here
  std::optional<Forest> best;
  for (std::size_t size = 0; size <= limit; ++size) {
    std::vector<std::size_t> removed(size);
    for (std::size_t i = 0; i < size; ++i) removed[i] = i;
    do {
      RestrictedForest rest;
      rest.isolated = priced.isolated;
      rest.pinned = priced.pinned;
      std::size_t next = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (next < size && removed[next] == i) {
          ++next;
          continue;
        }
        rest.components.push_back(priced.components[i]);
      }

      // Trees of F - H that hold a terminal of I'; the others are dropped.
      std::vector<std::vector<Vertex>> groups;
      VertexSet kept_vertices;
      for (auto& group : forest_trees(rest, terminals)) {
        if (std::none_of(group.begin(), group.end(),
                         [&](Vertex v) { return terminals.contains(v); })) {
          continue;
        }
        for (Vertex v : group) kept_vertices.insert(v);
        groups.push_back(std::move(group));
      }
      std::vector<Edge> edges;
      for (const FullComponent& c : rest.components) {
        if (kept_vertices.contains(c.edges.front().u)) {
          edges.insert(edges.end(), c.edges.begin(), c.edges.end());
        }
      }

      CandidateRecord rec;
      rec.removed = removed;
      rec.trees = groups.size();
      rec.forest_cost = total_cost(edges);
      ConnectResult h_set;
      try {
        h_set = connect(metric_, groups, options_.exact);
      } catch (const CapExceeded& e) {
        throw CapExceeded("BuildST candidate {" + join(removed) + "}: " + e.what());
      }
      rec.connect_cost = h_set.cost;
      rec.total = rec.forest_cost + rec.connect_cost;
      edges.insert(edges.end(), h_set.added.begin(), h_set.added.end());
      Forest tree = prune(embed_edges(edges, terminals.items(), instance_, metric_),
                          terminals);
      if (!tree.is_tree() || !spans(tree, terminals)) {
        throw InternalError("BuildST candidate is not a Steiner tree");
      }
      rec.embedded_cost = tree.cost();
      if (!best || rec.embedded_cost < best->cost()) {
        best = std::move(tree);
        audit.chosen = audit.candidates.size();
      }
      audit.candidates.push_back(std::move(rec));
    } while (size > 0 && next_colex(removed, m));
  }
  out.tree = std::move(*best);
  out.cost = out.tree.cost();
  return out;
}

BuildResult build_st(const StpInstance& instance, const RestrictedForest& forest,
                     const BigInt& h, const MetricClosure& metric,
                     const BuildOptions& options) {
  SwapEngine engine(instance, metric, options);
  return engine.run(forest, h);
}

}  // namespace streopt
