#include "doctest.h"

#include "streopt/errors.hpp"
#include "streopt/forest.hpp"
#include "streopt/harness/generate.hpp"
#include "streopt/metric.hpp"
#include "streopt/restricted_forest.hpp"
#include "support.hpp"

using namespace streopt;

namespace {

StpInstance path_abc() {
  return StpInstance(3, {{0, 1, 1}, {1, 2, 2}}, {0, 2});
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("instance rejects bad input") {
  CHECK_THROWS_AS(StpInstance(3, {{0, 1, 1}}, {0}), ValidationError);  // disconnected
  CHECK_THROWS_AS(StpInstance(2, {{0, 1, 1}, {1, 0, 2}}, {0}), ValidationError);
  CHECK_THROWS_AS(StpInstance(2, {{0, 0, 1}}, {0}), ValidationError);
  CHECK_THROWS_AS(StpInstance(2, {{0, 1, -1}}, {0}), ValidationError);
  CHECK_THROWS_AS(StpInstance(2, {{0, 1, 1}}, {}), ValidationError);
  CHECK_THROWS_AS(StpInstance(2, {{0, 1, 1}}, {2}), ValidationError);
  CHECK_THROWS_AS(StpInstance(2, {{0, 1, 1}}, {1, 1}), ValidationError);
}

TEST_CASE("instance edges are canonical") {
  StpInstance I(3, {{2, 1, 4}, {1, 0, 3}}, {0, 2});
  REQUIRE(I.edges().size() == 2);
  CHECK(I.edges()[0] == Edge{0, 1, 3});
  CHECK(I.edges()[1] == Edge{1, 2, 4});
  CHECK(I.edge_cost(2, 1) == 4);
  CHECK_FALSE(I.has_edge(0, 2));
  CHECK(I.with_edge_cost(0, 1, 9).edge_cost(1, 0) == 9);
  CHECK(I.rescaled(2).edge_cost(0, 1) == 300);
}

TEST_CASE("format helpers") {
  CHECK(format_cost(12345, 2) == "123.45");
  CHECK(format_cost(5, 3) == "0.005");
  CHECK(format_cost(7, 0) == "7");
  CHECK(format_ratio(Ratio(3, 2)) == "3/2");
  CHECK(format_ratio(Ratio(2)) == "2");
}

TEST_CASE("forest_add") {
  SUBCASE("disjoint addition") {
    Forest f = forest_add(Forest({{0, 1, 1}}), std::vector<Edge>{{1, 2, 1}});
    CHECK(f.edges().size() == 2);
    CHECK(f.is_tree());
  }
  SUBCASE("cycle skipped") {
    Forest f0({{0, 1, 1}, {1, 2, 1}});
    CHECK(forest_add(f0, std::vector<Edge>{{0, 2, 1}}) == f0);
  }
  SUBCASE("third edge closes a cycle") {
    Forest f = forest_add(Forest({}, {0, 1, 2}), std::vector<Edge>{{1, 2, 1}, {0, 2, 1}, {0, 1, 1}});
    CHECK(f.edges() == std::vector<Edge>{{0, 1, 1}, {0, 2, 1}});
  }
  SUBCASE("order of E' does not matter") {
    std::vector<Edge> a{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 5}};
    std::vector<Edge> b(a.rbegin(), a.rend());
    CHECK(forest_add(Forest(), a) == forest_add(Forest(), b));
  }
}

TEST_CASE("forest constructor rejects cycles") {
  CHECK_THROWS_AS(Forest({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}), InternalError);
}

TEST_CASE("forest_remove") {
  VertexSet R(4, std::vector<Vertex>{0, 2});
  SUBCASE("pruning a Steiner leaf") {
    Forest f({{0, 1, 1}, {1, 2, 1}});
    Forest g = forest_remove(f, std::vector<Edge>{{1, 2, 1}}, R);
    CHECK(g.vertices() == std::vector<Vertex>{0, 2});
    CHECK(g.edges().empty());
  }
  SUBCASE("identity") {
    Forest f({{0, 1, 1}, {1, 2, 1}});
    CHECK(forest_remove(f, {}, R) == f);
  }
  SUBCASE("terminal trees kept") {
    VertexSet R3(4, std::vector<Vertex>{1, 2, 3});
    Forest star({{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    Forest g = forest_remove(star, std::vector<Edge>{{0, 1, 1}}, R3);
    CHECK(g.num_trees() == 2);
    CHECK(g.contains(1));
    CHECK(g.edges() == std::vector<Edge>{{0, 2, 1}, {0, 3, 1}});
  }
  SUBCASE("terminal-free trees dropped") {
    Forest f({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
    VertexSet R0(4, std::vector<Vertex>{0});
    Forest g = forest_remove(f, std::vector<Edge>{{0, 1, 1}}, R0);
    CHECK(g.vertices() == std::vector<Vertex>{0});
  }
}

TEST_CASE("steiner tree predicate") {
  StpInstance I = path_abc();
  CHECK(is_steiner_tree(Forest({{0, 1, 1}, {1, 2, 2}}), I));
  CHECK_FALSE(is_steiner_tree(Forest({{0, 1, 1}}), I));
}

TEST_CASE("metric closure small cases") {
  SUBCASE("path sum") {
    auto M = MetricClosure::compute(path_abc());
    CHECK(M.dist(0, 2) == 3);
    CHECK(M.path(0, 2) == std::vector<Vertex>{0, 1, 2});
  }
  SUBCASE("triangle shortcut") {
    StpInstance I(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 3}}, {0, 2});
    auto M = MetricClosure::compute(I);
    CHECK(M.dist(0, 2) == testing_support::distances_by_paths(I)[0][2]);
    CHECK(M.dist(0, 2) == 2);
    for (Vertex u = 0; u < 3; ++u) CHECK(M.dist(u, u) == 0);
  }
  SUBCASE("ties prefer fewer hops") {
    StpInstance I(4, {{0, 1, 1}, {1, 2, 1}, {0, 2, 2}, {2, 3, 1}}, {0, 3});
    auto M = MetricClosure::compute(I);
    CHECK(M.path(0, 2) == std::vector<Vertex>{0, 2});
  }
  SUBCASE("exclusion") {
    StpInstance I(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 5}}, {0, 2});
    auto M = MetricClosure::compute(I, Edge{0, 1, 1});
    CHECK(M.dist(0, 2) == 5);
    CHECK_THROWS_AS(MetricClosure::compute(path_abc(), Edge{0, 1, 1}),
                    DisconnectedAfterExclusion);
  }
}

TEST_CASE("metric closure matches path enumeration") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.n = 4 + static_cast<int>(seed % 7);
    spec.extra_edges = static_cast<int>(seed % 5);
    StpInstance I = generate_instance(spec);
    auto M = MetricClosure::compute(I);
    auto ref = testing_support::distances_by_paths(I);
    const int n = I.num_vertices();
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = 0; b < n; ++b) {
        REQUIRE(M.dist(a, b) == ref[a][b]);
        REQUIRE(total_cost(M.path_edges(a, b)) == ref[a][b]);
        for (Vertex c = 0; c < n; ++c) REQUIRE(M.dist(a, c) <= M.dist(a, b) + M.dist(b, c));
      }
    }
  }
}

TEST_CASE("full components") {
  SUBCASE("internal terminals split") {
    VertexSet R(3, std::vector<Vertex>{0, 1, 2});
    auto comps = full_components(Forest({{0, 1, 1}, {1, 2, 1}}), R);
    CHECK(comps.size() == 2);
  }
  SUBCASE("star") {
    VertexSet R(4, std::vector<Vertex>{1, 2, 3});
    auto comps = full_components(Forest({{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}), R);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].steiner == std::vector<Vertex>{0});
    CHECK(comps[0].terminals == std::vector<Vertex>{1, 2, 3});
  }
  SUBCASE("two Steiner hubs") {
    // t1-s-t2-s'-t3 with ids t1=0 s=1 t2=2 s'=3 t3=4
    VertexSet R(5, std::vector<Vertex>{0, 2, 4});
    auto comps = full_components(Forest({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}}), R);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].vertices() == std::vector<Vertex>{0, 1, 2});
    CHECK(comps[1].vertices() == std::vector<Vertex>{2, 3, 4});
  }
}

TEST_CASE("full components partition random trees") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.n = 12;
    spec.extra_edges = 0;
    spec.terminals = 5;
    StpInstance I = generate_instance(spec);
    Forest tree(std::vector<Edge>(I.edges().begin(), I.edges().end()));
    tree = prune(tree, I.terminals());
    std::vector<Edge> all;
    for (const auto& c : full_components(tree, I.terminals())) {
      Forest part(c.edges);
      for (Vertex v : part.vertices()) {
        const bool leaf = part.degree(v) == 1;
        CHECK(leaf == I.is_terminal(v));
      }
      all.insert(all.end(), c.edges.begin(), c.edges.end());
    }
    std::sort(all.begin(), all.end(), canonical_less);
    CHECK(all == tree.edges());
  }
}

TEST_CASE("embed_to_graph") {
  StpInstance I = path_abc();
  auto M = MetricClosure::compute(I);
  SUBCASE("metric edge becomes its path") {
    RestrictedForest F;
    F.components.push_back(make_component({M.metric_edge(0, 2)}, I.terminals()));
    Forest g = embed_to_graph(F, I, M);
    CHECK(g.edges() == std::vector<Edge>{{0, 1, 1}, {1, 2, 2}});
    CHECK(g.cost() == 3);
  }
  SUBCASE("real edges unchanged") {
    Forest f({{0, 1, 1}, {1, 2, 2}});
    Forest g = embed_to_graph(as_restricted(f, I.terminals(), M), I, M);
    CHECK(g == f);
  }
}

TEST_CASE("embedding shared vertices costs at most the metric sum") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.n = 6;
    spec.terminals = 3;
    StpInstance I = generate_instance(spec);
    auto M = MetricClosure::compute(I);
    Rng rng(seed);
    const auto& R = I.terminals().items();
    const Vertex shared = static_cast<Vertex>(rng.below(6));
    RestrictedForest F;
    for (Vertex t : R) {
      if (t == shared) continue;
      F.components.push_back(make_component({M.metric_edge(t, shared)}, I.terminals()));
    }
    if (F.components.empty()) continue;
    Cost direct = 0;
    for (const auto& c : F.components) direct += c.cost();
    Forest g = embed_to_graph(F, I, M);
    CHECK(g.cost() <= direct);
    CHECK(g.num_trees() == 1);
    for (Vertex v : F.vertices()) CHECK(g.contains(v));
  }
}

}  // TEST_SUITE
