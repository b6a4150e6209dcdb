#include "doctest.h"

#include <nlohmann/json.hpp>
#include <sstream>

#include "streopt/buildst.hpp"
#include "streopt/errors.hpp"
#include "streopt/harness/generate.hpp"
#include "streopt/reopt.hpp"
#include "streopt/restrict.hpp"

using namespace streopt;

namespace {

// a0 b1 c2 s3 x4 y5 z6: the star through s costs 9, the path a-x-b-y-c costs 8.
StpInstance swap_instance() {
  return StpInstance(7,
                     {{0, 3, 3}, {1, 3, 3}, {2, 3, 3}, {0, 4, 2}, {4, 1, 2}, {1, 5, 2},
                      {5, 2, 2}, {3, 6, 5}},
                     {0, 1, 2});
}

RestrictedForest star_forest(const StpInstance& I, const MetricClosure& M) {
  RestrictedForest F;
  F.components.push_back(make_component(
      {M.metric_edge(0, 3), M.metric_edge(1, 3), M.metric_edge(2, 3)}, I.terminals()));
  return F;
}

// Terminal path 0-1-2-3: three single-edge components.
StpInstance terminal_path() {
  return StpInstance(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 2}}, {0, 1, 2, 3});
}

RestrictedForest restricted_two_approx(const StpInstance& I, const MetricClosure& M) {
  return restricted_st(two_approx(I, M), I.terminals(), Ratio(1), M).forest;
}

}  // namespace

TEST_SUITE("buildst") {

TEST_CASE("one swap recovers the optimum") {
  StpInstance I = swap_instance();
  auto M = MetricClosure::compute(I);
  RestrictedForest F = star_forest(I, M);
  CHECK(F.cost() == 9);
  auto r = build_st(I, F, 1, M);
  CHECK_FALSE(r.audit.from_scratch);
  CHECK(r.cost == 8);
  CHECK(r.cost == dreyfus_wagner(I, M).cost);
  CHECK(is_steiner_tree(r.tree, I));
  REQUIRE(r.audit.candidates.size() == 2);
  CHECK(r.audit.candidates[0].total == 9);
  CHECK(r.audit.chosen == 1);
}

TEST_CASE("fewer components than h falls back to the exact tree") {
  StpInstance I = terminal_path();
  auto M = MetricClosure::compute(I);
  RestrictedForest F;
  F.components.push_back(make_component({M.metric_edge(0, 1)}, I.terminals()));
  F.components.push_back(make_component({M.metric_edge(1, 2)}, I.terminals()));
  auto r = build_st(I, F, 5, M);
  CHECK(r.audit.from_scratch);
  CHECK(r.audit.candidates.empty());
  CHECK(r.cost == dreyfus_wagner(I, M).cost);
  CHECK(spans(r.tree, I.terminals()));
}

TEST_CASE("empty swap is among the candidates") {
  StpInstance I = swap_instance();
  auto M = MetricClosure::compute(I);
  Forest opt = dreyfus_wagner(I, M).tree;
  RestrictedForest F = as_restricted(opt, I.terminals(), M);
  auto r = build_st(I, F, 1, M);
  CHECK(r.cost <= opt.cost());
  CHECK(r.audit.candidates.front().removed.empty());
}

TEST_CASE("candidates come size-major in colex order") {
  StpInstance I = terminal_path();
  auto M = MetricClosure::compute(I);
  RestrictedForest F;
  for (Vertex v = 0; v < 3; ++v) {
    F.components.push_back(make_component({M.metric_edge(v, v + 1)}, I.terminals()));
  }
  auto r = build_st(I, F, 2, M);
  std::vector<std::vector<std::size_t>> seen;
  for (const auto& c : r.audit.candidates) seen.push_back(c.removed);
  const std::vector<std::vector<std::size_t>> want{{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
  CHECK(seen == want);
  CHECK(r.cost == 3);
}

TEST_CASE("h must be positive") {
  StpInstance I = terminal_path();
  auto M = MetricClosure::compute(I);
  CHECK_THROWS_AS(build_st(I, RestrictedForest{}, 0, M), ValidationError);
}

TEST_CASE("cap errors name the candidate") {
  StpInstance I = terminal_path();
  auto M = MetricClosure::compute(I);
  RestrictedForest F;
  for (Vertex v = 0; v < 3; ++v) {
    F.components.push_back(make_component({M.metric_edge(v, v + 1)}, I.terminals()));
  }
  BuildOptions o;
  o.exact.terminal_cap = 2;
  try {
    build_st(I, F, 2, M, o);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(std::string(e.what()).find("candidate {") != std::string::npos);
  }
}

TEST_CASE("h cap is recorded") {
  StpInstance I = swap_instance();
  auto M = MetricClosure::compute(I);
  BuildOptions o;
  o.h_cap = 1;
  auto r = build_st(I, star_forest(I, M), BigInt(1) << 40, M, o);
  CHECK(r.audit.capped());
  CHECK(r.audit.h_effective == 1);
  std::istringstream lines(r.audit.to_jsonl());
  std::string line;
  std::vector<nlohmann::json> records;
  while (std::getline(lines, line)) records.push_back(nlohmann::json::parse(line));
  REQUIRE(records.size() == 3);
  CHECK(records[0]["h_theoretical"] == "1099511627776");
  CHECK(records[0]["mode"] == "heuristic");
  CHECK(records[2]["removed"] == nlohmann::json::array({0}));
}

TEST_CASE("monotone in h and never above a witness") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.n = 7 + static_cast<int>(seed % 4);
    spec.terminals = 3 + static_cast<int>(seed % 3);
    StpInstance I = generate_instance(spec);
    auto M = MetricClosure::compute(I);
    RestrictedForest F = restricted_two_approx(I, M);
    SwapEngine engine(I, M);
    auto one = engine.run(F, 1);
    auto two = engine.run(F, 2);
    CHECK(two.cost <= one.cost);
    CHECK(is_steiner_tree(one.tree, I));
    CHECK(is_steiner_tree(two.tree, I));
    if (F.components.empty()) continue;

    // Witness: drop one component and hang every other tree on the first one
    // by its cheapest metric edge.
    const std::size_t drop = seed % F.components.size();
    RestrictedForest rest;
    rest.isolated = F.isolated;
    for (std::size_t i = 0; i < F.components.size(); ++i) {
      if (i != drop) rest.components.push_back(F.components[i]);
    }
    auto groups = forest_trees(rest, I.terminals());
    Cost h = 0;
    for (std::size_t g = 1; g < groups.size(); ++g) {
      Cost cheapest = kInfinity;
      for (Vertex a : groups[0]) {
        for (Vertex b : groups[g]) cheapest = std::min(cheapest, M.dist(a, b));
      }
      h += cheapest;
    }
    CHECK(one.cost <= rest.cost() + h);
  }
}

}  // TEST_SUITE
