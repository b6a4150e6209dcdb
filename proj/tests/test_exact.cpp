#include "doctest.h"

#include "streopt/errors.hpp"
#include "streopt/exact.hpp"
#include "streopt/harness/generate.hpp"
#include "streopt/harness/oracle.hpp"
#include "support.hpp"

using namespace streopt;

namespace {

// a=0 b=1 c=2 s=3; spokes 1.0, rim 1.9 (scaled by 10)
StpInstance star_with_rim() {
  return StpInstance(4,
                     {{0, 3, 10}, {1, 3, 10}, {2, 3, 10}, {0, 1, 19}, {0, 2, 19}, {1, 2, 19}},
                     {0, 1, 2}, 1);
}

// Random forest with at most three trees: a random spanning tree with up to two
// edges cut, pruned to the terminals.
Forest random_forest(const StpInstance& I, Rng& rng) {
  std::vector<Edge> edges(I.edges().begin(), I.edges().end());
  for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.below(i)]);
  std::vector<Edge> tree;
  DisjointSets dsu(I.num_vertices());
  for (const Edge& e : edges) {
    if (dsu.unite(e.u, e.v)) tree.push_back(e);
  }
  std::vector<Edge> cut;
  const std::uint64_t cuts = rng.below(3);
  for (std::uint64_t i = 0; i < cuts && !tree.empty(); ++i) {
    cut.push_back(tree[rng.below(tree.size())]);
  }
  return forest_remove(Forest(tree), cut, I.terminals());
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("two terminals give the shortest path") {
  StpInstance I(4, {{0, 1, 2}, {1, 3, 2}, {0, 2, 1}, {2, 3, 4}}, {0, 3});
  auto M = MetricClosure::compute(I);
  auto r = dreyfus_wagner(I, M);
  CHECK(r.cost == 4);
  CHECK(r.tree.edges() == std::vector<Edge>{{0, 1, 2}, {1, 3, 2}});
}

TEST_CASE("star through the Steiner vertex") {
  StpInstance I = star_with_rim();
  auto M = MetricClosure::compute(I);
  auto r = dreyfus_wagner(I, M);
  CHECK(r.cost == 30);
  CHECK(r.tree.contains(3));
  CHECK(oracle_solve(I).cost == 30);
  CHECK(is_steiner_tree(r.tree, I));
}

TEST_CASE("all vertices terminal on a tree graph") {
  StpInstance I(5, {{0, 1, 3}, {1, 2, 4}, {1, 3, 1}, {3, 4, 7}}, {0, 1, 2, 3, 4});
  auto r = dreyfus_wagner(I, MetricClosure::compute(I));
  CHECK(r.cost == 15);
  CHECK(r.tree.edges().size() == 4);
}

TEST_CASE("single terminal") {
  StpInstance I(2, {{0, 1, 3}}, {1});
  auto r = dreyfus_wagner(I, MetricClosure::compute(I));
  CHECK(r.cost == 0);
  CHECK(r.tree.vertices() == std::vector<Vertex>{1});
}

TEST_CASE("terminal cap") {
  StpInstance I = star_with_rim();
  ExactOptions o;
  o.terminal_cap = 2;
  CHECK_THROWS_AS(dreyfus_wagner(I, MetricClosure::compute(I), o), CapExceeded);
}

TEST_CASE("table relations") {
  StpInstance I = star_with_rim();
  auto M = MetricClosure::compute(I);
  std::vector<Cost> dist;
  for (Vertex a = 0; a < 4; ++a) {
    for (Vertex b = 0; b < 4; ++b) dist.push_back(M.dist(a, b));
  }
  DwTable t(4, dist, {0, 1, 2});
  // Root is the last terminal, masks index the first two.
  for (Vertex v = 0; v < 4; ++v) {
    CHECK(t.dp(1, v) == M.dist(0, v));
    CHECK(t.dp(2, v) == M.dist(1, v));
    CHECK(t.dp(3, v) <= t.dp(1, v) + t.dp(2, v));
  }
  CHECK(t.optimum() == 30);
}

TEST_CASE("agrees with the oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.n = 3 + static_cast<int>(seed % 7);
    spec.topology = static_cast<Topology>(seed % 3);
    spec.terminals = 1 + static_cast<int>(seed % 5);
    if (*spec.terminals > spec.n) spec.terminals = spec.n;
    StpInstance I = generate_instance(spec);
    auto M = MetricClosure::compute(I);
    auto r = dreyfus_wagner(I, M);
    REQUIRE(r.cost == oracle_solve(I).cost);
    REQUIRE(r.tree.cost() == r.cost);
    REQUIRE(is_steiner_tree(r.tree, I));
  }
}

TEST_CASE("connect examples") {
  SUBCASE("already a tree") {
    StpInstance I(3, {{0, 1, 1}, {1, 2, 1}}, {0, 2});
    auto M = MetricClosure::compute(I);
    auto h = connect(I, M, Forest({{0, 1, 1}, {1, 2, 1}}));
    CHECK(h.cost == 0);
    CHECK(h.added.empty());
    CHECK(h.num_trees == 1);
  }
  SUBCASE("two isolated terminals") {
    StpInstance I(3, {{0, 1, 1}, {1, 2, 1}}, {0, 2});
    auto M = MetricClosure::compute(I);
    auto h = connect(I, M, Forest({}, {0, 2}));
    CHECK(h.cost == 2);
    CHECK(h.added == std::vector<Edge>{{0, 2, 2}});
    CHECK(h.cost == testing_support::brute_force_connect(I, Forest({}, {0, 2})));
  }
  SUBCASE("from scratch") {
    StpInstance I = star_with_rim();
    auto M = MetricClosure::compute(I);
    auto h = connect(I, M, Forest({}, {0, 1, 2}));
    CHECK(h.cost == 30);
    CHECK(h.full_components == 1);
  }
  SUBCASE("tree cap") {
    StpInstance I = star_with_rim();
    auto M = MetricClosure::compute(I);
    ExactOptions o;
    o.terminal_cap = 2;
    CHECK_THROWS_AS(connect(I, M, Forest({}, {0, 1, 2}), o), CapExceeded);
  }
  SUBCASE("restricted forest with repeated ids") {
    StpInstance I = star_with_rim();
    auto M = MetricClosure::compute(I);
    RestrictedForest F;
    F.components.push_back(make_component({M.metric_edge(0, 3), M.metric_edge(1, 3)}, I.terminals()));
    F.components.push_back(make_component({M.metric_edge(1, 3)}, I.terminals()));
    auto h = connect(I, M, F);
    CHECK(h.num_trees == 2);
    CHECK(h.cost == 10);
  }
}

TEST_CASE("connect matches brute force on sparse forests") {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 60; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.n = 5 + static_cast<int>(seed % 5);
    spec.extra_edges = static_cast<int>(seed % 4);
    spec.terminals = 2 + static_cast<int>(seed % 3);
    StpInstance I = generate_instance(spec);
    auto M = MetricClosure::compute(I);
    Rng rng(seed * 7);
    Forest F = random_forest(I, rng);
    auto h = connect(I, M, F);
    REQUIRE(h.num_trees <= 3);
    REQUIRE(h.cost == testing_support::brute_force_connect(I, F));
    REQUIRE(h.cost == total_cost(h.added));
    REQUIRE(h.full_components + 1 <= std::max<std::size_t>(h.num_trees, 1));
    Forest joined = embed_edges(h.added, F.vertices(), I, M);
    joined = forest_add(F, joined.edges());
    REQUIRE(joined.is_tree());
    REQUIRE(spans(joined, I.terminals()));
    ++checked;
  }
}

}  // TEST_SUITE
