#include "doctest.h"

#include <cmath>
#include <nlohmann/json.hpp>

#include "streopt/errors.hpp"
#include "streopt/exact.hpp"
#include "streopt/harness/constants.hpp"
#include "streopt/harness/generate.hpp"
#include "streopt/harness/oracle.hpp"
#include "streopt/harness/suite.hpp"

using namespace streopt;

TEST_SUITE("harness") {

TEST_CASE("oracle small cases") {
  SUBCASE("two terminals") {
    StpInstance I(4, {{0, 1, 2}, {1, 3, 2}, {0, 2, 1}, {2, 3, 4}}, {0, 3});
    CHECK(oracle_solve(I).cost == 4);
  }
  SUBCASE("star") {
    StpInstance I(4,
                  {{0, 3, 10}, {1, 3, 10}, {2, 3, 10}, {0, 1, 19}, {0, 2, 19}, {1, 2, 19}},
                  {0, 1, 2}, 1);
    auto r = oracle_solve(I);
    CHECK(r.cost == 30);
    CHECK(is_steiner_tree(Forest(r.edges, I.terminals().items()), I));
  }
  SUBCASE("all terminals on a tree") {
    StpInstance I(4, {{0, 1, 2}, {1, 2, 3}, {1, 3, 4}}, {0, 1, 2, 3});
    CHECK(oracle_solve(I).cost == 9);
  }
  SUBCASE("caps") {
    InstanceSpec spec;
    spec.n = 15;
    CHECK_THROWS_AS(oracle_solve(generate_instance(spec)), OracleCapExceeded);
    spec.n = 10;
    spec.terminals = 8;
    CHECK_THROWS_AS(oracle_solve(generate_instance(spec)), OracleCapExceeded);
    CHECK_NOTHROW(oracle_solve(generate_instance(spec), {10, 8}));
  }
}

TEST_CASE("generator") {
  SUBCASE("deterministic per seed") {
    InstanceSpec spec;
    spec.seed = 42;
    spec.n = 8;
    CHECK(write_stp(generate_instance(spec)) == write_stp(generate_instance(spec)));
    InstanceSpec other = spec;
    other.seed = 43;
    CHECK(write_stp(generate_instance(spec)) != write_stp(generate_instance(other)));
  }
  SUBCASE("grid 3x3") {
    InstanceSpec spec;
    spec.n = 9;
    spec.topology = Topology::kGrid;
    CHECK(generate_instance(spec).edges().size() == 12);
  }
  SUBCASE("tree plus no chords") {
    InstanceSpec spec;
    spec.n = 11;
    spec.topology = Topology::kTreePlusChords;
    spec.extra_edges = 0;
    CHECK(generate_instance(spec).edges().size() == 10);
  }
  SUBCASE("weights and terminals in range") {
    InstanceSpec spec;
    spec.n = 12;
    spec.min_weight = 3;
    spec.max_weight = 4;
    spec.terminals = 5;
    StpInstance I = generate_instance(spec);
    CHECK(I.terminals().size() == 5);
    for (const Edge& e : I.edges()) CHECK((e.cost == 3 || e.cost == 4));
  }
  SUBCASE("topology names") {
    for (Topology t : {Topology::kRandomConnected, Topology::kGrid, Topology::kTreePlusChords}) {
      CHECK(parse_topology(topology_name(t)) == t);
    }
    CHECK_THROWS_AS(parse_topology("torus"), ValidationError);
  }
  SUBCASE("rng stays in range") {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
      auto x = rng.between(-3, 3);
      CHECK((x >= -3 && x <= 3));
    }
  }
}

TEST_CASE("generated scenarios are valid and reproducible") {
  for (Scenario kind : {Scenario::kTerminalAdd, Scenario::kEdgeIncrease,
                        Scenario::kTerminalRemove, Scenario::kEdgeDecrease}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      InstanceSpec spec;
      spec.seed = seed;
      spec.n = 7;
      StpInstance I = generate_instance(spec);
      for (bool optimal : {true, false}) {
        ScenarioFile s = generate_scenario(I, {seed, kind, optimal});
        CHECK(scenario_of(s.modification) == kind);
        CHECK_NOTHROW(check_modification(s.base, s.modification));
        CHECK(is_steiner_tree(s.solution, s.base));
        CHECK(s.rho == (optimal ? Ratio(1) : Ratio(2)));
        if (optimal) CHECK(s.solution.cost() == oracle_solve(I).cost);
        CHECK(write_scenario(s) == write_scenario(generate_scenario(I, {seed, kind, optimal})));
      }
    }
  }
  StpInstance all(2, {{0, 1, 1}}, {0, 1});
  CHECK_THROWS_AS(generate_scenario(all, {1, Scenario::kTerminalAdd, true}), ValidationError);
}

TEST_CASE("prior ratios at ln 4") {
  auto rows = table1_constants();
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(std::fabs(r.value - r.reported) <= 0.002);
  CHECK(rows[0].value == doctest::Approx(1.20317).epsilon(1e-5));
  CHECK(rows[1].value == doctest::Approx(1.25497).epsilon(1e-5));
  CHECK(rows[2].value == doctest::Approx(1.24458).epsilon(1e-5));
}

TEST_CASE("suite config") {
  auto c = parse_suite_config(R"({"seed": 5, "count": 3, "n": 7, "kinds": ["edge-inc"],
                                  "epsilon": "1/2", "h_cap": 2, "workers": 3,
                                  "topology": "grid", "terminal_cap": 9})");
  CHECK(c.seed == 5);
  CHECK(c.count == 3);
  CHECK(c.instance.n == 7);
  CHECK(c.kinds == std::vector<Scenario>{Scenario::kEdgeIncrease});
  CHECK(c.epsilon == Ratio(1, 2));
  CHECK(c.h_cap == std::uint64_t{2});
  CHECK(c.workers == 3);
  CHECK(c.instance.topology == Topology::kGrid);
  CHECK(c.exact.terminal_cap == 9);
  CHECK_THROWS_AS(parse_suite_config("{"), ValidationError);
  CHECK_THROWS_AS(parse_suite_config(R"({"kinds": ["vertex-add"]})"), ValidationError);
}

TEST_CASE("suite is deterministic across worker counts") {
  SuiteConfig c;
  c.seed = 11;
  c.count = 4;
  c.instance.n = 7;
  c.workers = 1;
  const std::string one = run_suite(c).jsonl();
  c.workers = 4;
  const SuiteReport report = run_suite(c);
  CHECK(report.jsonl() == one);
  CHECK(report.runs.size() == 16);
  for (const RunReport& r : report.runs) {
    CHECK_FALSE(r.error);
    CHECK(r.feasible);
    REQUIRE(r.oracle_cost);
    CHECK(*r.ratio() >= 1.0);
    CHECK_FALSE(r.violates_bound());
    CHECK(r.output_cost == *r.oracle_cost);
  }
  CHECK(report.summary().find("terminal-add") != std::string::npos);
}

TEST_CASE("suite isolates failures") {
  SuiteConfig c;
  c.count = 1;
  c.instance.n = 6;
  c.kinds = {Scenario::kEdgeDecrease};
  c.scenario_files = {"/nonexistent/scenario.txt"};
  const SuiteReport report = run_suite(c);
  REQUIRE(report.runs.size() == 2);
  int failed = 0;
  for (const RunReport& r : report.runs) {
    if (r.error) {
      ++failed;
      CHECK(r.error_code == 1);
      auto j = nlohmann::json::parse(r.to_json());
      CHECK(j["exit_code"] == 1);
    }
  }
  CHECK(failed == 1);
}

TEST_CASE("run report fields") {
  InstanceSpec spec;
  spec.seed = 3;
  spec.n = 6;
  ScenarioFile task = generate_scenario(generate_instance(spec), {3, Scenario::kEdgeIncrease, false});
  SuiteConfig c;
  c.h_cap = 1;
  RunReport r = run_scenario(task, c, 7, "test");
  CHECK(r.id == 7);
  CHECK(r.algorithm == "edge-inc");
  CHECK(r.mode == "heuristic");
  CHECK(r.bound() == Ratio(3));
  CHECK(r.feasible);
  CHECK(r.output_cost <= r.input_cost_modified);
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["source"] == "test");
  CHECK(j["bound"] == "3");
}

}  // TEST_SUITE
