#include "streopt/harness/suite.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "streopt/errors.hpp"
#include "streopt/harness/oracle.hpp"

namespace streopt {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Ratio parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  try {
    const long long p = std::stoll(text.substr(0, slash));
    const long long q = slash == std::string::npos ? 1 : std::stoll(text.substr(slash + 1));
    if (q <= 0) throw ValidationError("denominator must be positive");
    return Ratio(p, q);
  } catch (const std::logic_error&) {
    throw ValidationError("invalid ratio '" + text + "'");
  }
}

Scenario parse_kind(const std::string& name) {
  for (Scenario s : {Scenario::kTerminalAdd, Scenario::kEdgeIncrease,
                     Scenario::kTerminalRemove, Scenario::kEdgeDecrease}) {
    if (scenario_name(s) == name) return s;
  }
  throw ValidationError("unknown scenario kind '" + name + "'");
}

bool within_oracle(const StpInstance& instance) {
  const OracleLimits limits;
  return instance.num_vertices() <= limits.max_vertices &&
         static_cast<int>(instance.terminals().size()) <= limits.max_terminals;
}

}  // namespace

SuiteConfig parse_suite_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  SuiteConfig c;
  try {
    c.seed = j.value("seed", c.seed);
    c.count = j.value("count", c.count);
    c.instance.n = j.value("n", c.instance.n);
    if (j.contains("terminals")) c.instance.terminals = j["terminals"].get<int>();
    c.instance.terminal_fraction = j.value("terminal_fraction", c.instance.terminal_fraction);
    c.instance.topology = parse_topology(j.value("topology", std::string("random-connected")));
    c.instance.min_weight = j.value("min_weight", c.instance.min_weight);
    c.instance.max_weight = j.value("max_weight", c.instance.max_weight);
    if (j.contains("extra_edges")) c.instance.extra_edges = j["extra_edges"].get<int>();
    if (j.contains("kinds")) {
      c.kinds.clear();
      for (const auto& k : j["kinds"]) c.kinds.push_back(parse_kind(k.get<std::string>()));
    }
    c.optimal = j.value("optimal", c.optimal);
    if (j.contains("scenarios")) {
      c.scenario_files = j["scenarios"].get<std::vector<std::string>>();
    }
    c.epsilon = parse_ratio(j.value("epsilon", std::string("1")));
    if (j.contains("h_cap") && !j["h_cap"].is_null()) c.h_cap = j["h_cap"].get<std::uint64_t>();
    c.oracle = j.value("oracle", c.oracle);
    c.workers = std::max(1, j.value("workers", c.workers));
    c.timing = j.value("timing", c.timing);
    c.exact.terminal_cap = j.value("terminal_cap", c.exact.terminal_cap);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (c.count < 0) throw ValidationError("config: count must be >= 0");
  return c;
}

std::optional<double> RunReport::ratio() const {
  if (!oracle_cost || error) return std::nullopt;
  if (*oracle_cost == 0) return output_cost == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(output_cost) / static_cast<double>(*oracle_cost);
}

bool RunReport::violates_bound() const {
  if (!oracle_cost || error || mode != "guaranteed") return false;
  const Ratio b = bound();
  return static_cast<__int128>(output_cost) * b.denominator() >
         static_cast<__int128>(*oracle_cost) * b.numerator();
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["source"] = source;
  j["algorithm"] = algorithm;
  if (error) {
    j["error"] = *error;
    j["exit_code"] = error_code.value_or(3);
  } else {
    j["input_cost"] = format_cost(input_cost, decimals);
    j["input_cost_modified"] = format_cost(input_cost_modified, decimals);
    j["output_cost"] = format_cost(output_cost, decimals);
    j["baseline_cost"] = format_cost(baseline_cost, decimals);
    j["oracle_cost"] = oracle_cost ? nlohmann::ordered_json(format_cost(*oracle_cost, decimals))
                                   : nlohmann::ordered_json(nullptr);
    if (auto r = ratio()) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(6) << *r;
      j["ratio"] = s.str();
    } else {
      j["ratio"] = nullptr;
    }
    j["bound"] = format_ratio(bound());
    j["mode"] = mode;
    j["feasible"] = feasible;
    if (rho_confirmed) j["rho_confirmed"] = *rho_confirmed;
  }
  if (wall_ms) j["wall_ms"] = *wall_ms;
  return j.dump();
}

std::string SuiteReport::jsonl() const {
  std::string out;
  for (const RunReport& r : runs) out += r.to_json() + "\n";
  return out;
}

std::string SuiteReport::summary() const {
  struct Row {
    int runs = 0, errors = 0, feasible = 0, with_oracle = 0, exact = 0, violations = 0;
    int heuristic = 0;
    double worst = 1.0;
  };
  std::map<std::string, Row> rows;
  for (const RunReport& r : runs) {
    Row& row = rows[r.algorithm];
    ++row.runs;
    if (r.error) {
      ++row.errors;
      continue;
    }
    row.feasible += r.feasible;
    row.heuristic += r.mode == "heuristic";
    if (r.oracle_cost) {
      ++row.with_oracle;
      row.exact += r.output_cost == *r.oracle_cost;
      row.worst = std::max(row.worst, r.ratio().value_or(1.0));
    }
    row.violations += r.violates_bound();
  }
  std::ostringstream out;
  out << std::left << std::setw(17) << "algorithm" << std::right << std::setw(6) << "runs"
      << std::setw(8) << "errors" << std::setw(10) << "feasible" << std::setw(8) << "oracle"
      << std::setw(7) << "exact" << std::setw(11) << "heuristic" << std::setw(11)
      << "worst" << std::setw(12) << "violations" << "\n";
  for (const auto& [name, row] : rows) {
    out << std::left << std::setw(17) << name << std::right << std::setw(6) << row.runs
        << std::setw(8) << row.errors << std::setw(10) << row.feasible << std::setw(8)
        << row.with_oracle << std::setw(7) << row.exact << std::setw(11) << row.heuristic
        << std::setw(11) << std::fixed << std::setprecision(4) << row.worst
        << std::setw(12) << row.violations << "\n";
  }
  return out.str();
}

RunReport run_scenario(const ScenarioFile& task, const SuiteConfig& config, std::size_t id,
                       const std::string& source) {
  RunReport r;
  r.id = id;
  r.source = source;
  r.algorithm = modification_kind(task.modification);
  r.decimals = task.base.decimals();
  r.rho = task.rho;
  r.epsilon = config.epsilon;
  const auto start = std::chrono::steady_clock::now();
  try {
    const StpInstance modified = apply_modification(task.base, task.modification);
    const MetricClosure metric = MetricClosure::compute(modified);
    r.input_cost = task.solution.cost();
    r.input_cost_modified = reprice(task.solution, modified).cost();
    ReoptOptions options;
    options.h_cap = config.h_cap;
    options.exact = config.exact;
    const ReoptResult result = reoptimize(task, config.epsilon, options);
    r.output_cost = result.cost;
    r.mode = result.mode;
    r.feasible = is_steiner_tree(result.tree, modified);
    r.baseline_cost = two_approx(modified, metric).cost();
    if (config.oracle && within_oracle(modified)) {
      r.oracle_cost = oracle_solve(modified).cost;
      if (task.rho == Ratio(1) && within_oracle(task.base)) {
        r.rho_confirmed = oracle_solve(task.base).cost == r.input_cost;
      }
    }
  } catch (const Error& e) {
    r.error = e.what();
    r.error_code = exit_code_for(e);
  } catch (const std::exception& e) {
    r.error = e.what();
    r.error_code = 3;
  }
  if (config.timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          start)
                    .count();
  }
  return r;
}

SuiteReport run_suite(const SuiteConfig& config) {
  struct Job {
    std::string source;
    std::optional<std::uint64_t> seed;
    Scenario kind = Scenario::kTerminalAdd;
  };
  std::vector<Job> jobs;
  for (Scenario kind : config.kinds) {
    for (int i = 0; i < config.count; ++i) {
      const std::uint64_t seed = mix(config.seed ^ mix(jobs.size()));
      jobs.push_back({"gen:" + std::to_string(seed), seed, kind});
    }
  }
  for (const std::string& path : config.scenario_files) jobs.push_back({path, {}, {}});

  std::vector<RunReport> runs(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        ScenarioFile task = [&] {
          if (job.seed) {
            InstanceSpec spec = config.instance;
            spec.seed = *job.seed;
            const StpInstance instance = generate_instance(spec);
            return generate_scenario(instance, {mix(*job.seed), job.kind, config.optimal});
          }
          return parse_scenario(read_file(job.source), read_file);
        }();
        runs[i] = run_scenario(task, config, i, job.source);
      } catch (const Error& e) {
        runs[i].id = i;
        runs[i].source = job.source;
        runs[i].algorithm = job.seed ? scenario_name(job.kind) : "unknown";
        runs[i].error = e.what();
        runs[i].error_code = exit_code_for(e);
      }
    }
  };
  const int workers = std::min<int>(config.workers, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return SuiteReport{std::move(runs)};
}

}  // namespace streopt
