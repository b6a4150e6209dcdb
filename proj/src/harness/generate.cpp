#include "streopt/harness/generate.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "streopt/errors.hpp"
#include "streopt/exact.hpp"
#include "streopt/harness/oracle.hpp"

namespace streopt {
namespace {

void shuffle(std::vector<int>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

std::vector<Edge> random_tree(int n, Rng& rng, const InstanceSpec& spec) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    const int parent = order[rng.below(static_cast<std::uint64_t>(i))];
    edges.push_back(
        make_edge(order[i], parent, rng.between(spec.min_weight, spec.max_weight)));
  }
  return edges;
}

void add_chords(std::vector<Edge>& edges, int n, int count, Rng& rng,
                const InstanceSpec& spec) {
  std::set<std::pair<int, int>> used;
  for (const Edge& e : edges) used.emplace(e.u, e.v);
  const long long room = static_cast<long long>(n) * (n - 1) / 2 - static_cast<long long>(used.size());
  count = static_cast<int>(std::min<long long>(count, room));
  while (count > 0) {
    const int a = static_cast<int>(rng.below(n));
    const int b = static_cast<int>(rng.below(n));
    if (a == b || !used.emplace(std::min(a, b), std::max(a, b)).second) continue;
    edges.push_back(make_edge(a, b, rng.between(spec.min_weight, spec.max_weight)));
    --count;
  }
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InternalError("Rng::below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Topology parse_topology(const std::string& name) {
  if (name == "random-connected") return Topology::kRandomConnected;
  if (name == "grid") return Topology::kGrid;
  if (name == "tree-plus-chords") return Topology::kTreePlusChords;
  throw ValidationError("unknown topology '" + name + "'");
}

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::kRandomConnected: return "random-connected";
    case Topology::kGrid: return "grid";
    case Topology::kTreePlusChords: return "tree-plus-chords";
  }
  return "?";
}

StpInstance generate_instance(const InstanceSpec& spec) {
  if (spec.n < 1) throw ValidationError("n must be positive");
  if (spec.min_weight < 0 || spec.max_weight < spec.min_weight) {
    throw ValidationError("invalid weight range");
  }
  Rng rng(spec.seed);
  const int n = spec.n;
  std::vector<Edge> edges;
  switch (spec.topology) {
    case Topology::kGrid: {
      int rows = 1;
      for (int d = 1; d * d <= n; ++d) {
        if (n % d == 0) rows = d;
      }
      const int cols = n / rows;
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
          const int v = i * cols + j;
          if (j + 1 < cols) edges.push_back(make_edge(v, v + 1, rng.between(spec.min_weight, spec.max_weight)));
          if (i + 1 < rows) edges.push_back(make_edge(v, v + cols, rng.between(spec.min_weight, spec.max_weight)));
        }
      }
      break;
    }
    case Topology::kRandomConnected:
      edges = random_tree(n, rng, spec);
      add_chords(edges, n, spec.extra_edges.value_or(n), rng, spec);
      break;
    case Topology::kTreePlusChords:
      edges = random_tree(n, rng, spec);
      add_chords(edges, n, spec.extra_edges.value_or(n / 3), rng, spec);
      break;
  }
  int k = spec.terminals.value_or(
      static_cast<int>(std::lround(spec.terminal_fraction * n)));
  k = std::clamp(k, 1, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  order.resize(k);
  return StpInstance(n, std::move(edges), std::move(order));
}

ScenarioFile generate_scenario(const StpInstance& instance, const ScenarioSpec& spec) {
  Rng rng(spec.seed);
  const MetricClosure metric = MetricClosure::compute(instance);
  Forest solution;
  if (!spec.optimal) {
    solution = two_approx(instance, metric);
  } else if (instance.num_vertices() <= OracleLimits{}.max_vertices &&
             static_cast<int>(instance.terminals().size()) <= OracleLimits{}.max_terminals) {
    const OracleResult best = oracle_solve(instance);
    solution = Forest(best.edges, instance.terminals().items());
  } else {
    solution = dreyfus_wagner(instance, metric).tree;
  }

  Modification mod;
  const int n = instance.num_vertices();
  auto pick_edge = [&](bool positive_only) -> const Edge& {
    std::vector<const Edge*> in_s;
    std::vector<const Edge*> all;
    for (const Edge& e : instance.edges()) {
      if (positive_only && e.cost == 0) continue;
      all.push_back(&e);
      if (solution.contains_edge(e.u, e.v)) in_s.push_back(&e);
    }
    if (all.empty()) throw ValidationError("no edge can be modified");
    const bool from_s = !in_s.empty() && rng.below(3) != 0;
    const auto& pool = from_s ? in_s : all;
    return *pool[rng.below(pool.size())];
  };
  switch (spec.kind) {
    case Scenario::kTerminalAdd: {
      std::vector<int> steiner;
      for (int v = 0; v < n; ++v) {
        if (!instance.is_terminal(v)) steiner.push_back(v);
      }
      if (steiner.empty()) throw ValidationError("every vertex is already a terminal");
      mod = TerminalAdd{steiner[rng.below(steiner.size())]};
      break;
    }
    case Scenario::kTerminalRemove: {
      const auto& r = instance.terminals().items();
      if (r.size() < 2) throw ValidationError("cannot remove the only terminal");
      mod = TerminalRemove{r[rng.below(r.size())]};
      break;
    }
    case Scenario::kEdgeIncrease: {
      const Edge& e = pick_edge(false);
      mod = EdgeIncrease{e.u, e.v, rng.between(1, std::max<Cost>(e.cost, 1) * 2)};
      break;
    }
    case Scenario::kEdgeDecrease: {
      const Edge& e = pick_edge(true);
      mod = EdgeDecrease{e.u, e.v, rng.between(1, e.cost)};
      break;
    }
  }
  ScenarioFile out{instance, solution, spec.optimal ? Ratio(1) : Ratio(2), mod};
  check_modification(instance, mod);
  return out;
}

}  // namespace streopt
