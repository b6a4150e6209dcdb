#include "streopt/io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "streopt/errors.hpp"

namespace streopt {
namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> split_lines(std::string_view text, int first_number = 1) {
  std::vector<Line> out;
  int number = first_number;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back({number++, std::move(line)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

long long parse_int(const std::string& tok, int line, const char* what) {
  if (tok.empty()) throw ParseError(line, std::string("missing ") + what);
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("invalid ") + what + " '" + tok + "'");
  }
  if (pos != tok.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + tok + "'");
  }
  return value;
}

// Non-negative decimal literal split into integer and fraction digits.
struct Decimal {
  std::string whole;
  std::string frac;
  int line;
};

Decimal parse_decimal(const std::string& tok, int line) {
  if (!tok.empty() && tok[0] == '-') {
    throw ParseError(line, "negative weight '" + tok + "'");
  }
  Decimal d{"", "", line};
  std::size_t i = tok.empty() || tok[0] != '+' ? 0 : 1;
  for (; i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])); ++i) {
    d.whole += tok[i];
  }
  if (i < tok.size() && tok[i] == '.') {
    for (++i; i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])); ++i) {
      d.frac += tok[i];
    }
  }
  if (i != tok.size() || (d.whole.empty() && d.frac.empty())) {
    throw ParseError(line, "invalid weight '" + tok + "'");
  }
  while (!d.frac.empty() && d.frac.back() == '0') d.frac.pop_back();
  if (d.whole.size() > 15 || d.frac.size() > 9) {
    throw ParseError(line, "weight '" + tok + "' exceeds supported precision");
  }
  return d;
}

Cost scale_decimal(const Decimal& d, int decimals) {
  Cost whole = d.whole.empty() ? 0 : std::stoll(d.whole);
  std::string frac = d.frac;
  frac.append(decimals - frac.size(), '0');
  const Cost scale = pow10(decimals);
  if (whole > kInfinity / scale / 4) throw ParseError(d.line, "weight too large");
  return whole * scale + (frac.empty() ? 0 : std::stoll(frac));
}

Vertex parse_vertex(const std::string& tok, int n, int line) {
  const long long id = parse_int(tok, line, "vertex id");
  if (id < 1 || id > n) {
    throw ParseError(line, "vertex id " + tok + " out of range 1.." + std::to_string(n));
  }
  return static_cast<Vertex>(id - 1);
}

struct PendingEdge {
  Vertex u;
  Vertex v;
  Decimal weight;
};

StpInstance parse_stp_lines(const std::vector<Line>& lines,
                            std::vector<std::string>* warnings) {
  std::optional<int> nodes;
  std::optional<long long> declared_edges;
  std::optional<long long> declared_terminals;
  std::vector<PendingEdge> edges;
  std::vector<Vertex> terminals;
  bool seen_graph = false;
  bool seen_terminals = false;
  bool seen_eof = false;
  bool first_content = true;
  std::string section;  // empty when outside a section
  int section_line = 0;

  for (const Line& line : lines) {
    const auto tok = tokens(line.text);
    if (tok.empty()) continue;
    const std::string key = lower(tok[0]);
    if (first_content) {
      first_content = false;
      if (key == "33d32945") continue;
    }
    if (seen_eof) {
      throw ParseError(line.number, "content after EOF");
    }
    if (section.empty()) {
      if (key == "eof") {
        seen_eof = true;
      } else if (key == "section" && tok.size() >= 2) {
        section = lower(tok[1]);
        section_line = line.number;
        if (section == "graph") {
          if (seen_graph) throw ParseError(line.number, "duplicate Graph section");
          seen_graph = true;
        } else if (section == "terminals") {
          if (seen_terminals) throw ParseError(line.number, "duplicate Terminals section");
          seen_terminals = true;
        } else if (section != "comment" && warnings) {
          warnings->push_back("line " + std::to_string(line.number) +
                              ": skipping section " + tok[1]);
        }
      } else {
        throw ParseError(line.number, "expected SECTION or EOF, got '" + tok[0] + "'");
      }
      continue;
    }
    if (key == "end") {
      if (section == "graph") {
        if (!nodes) throw ParseError(line.number, "Graph section without Nodes");
        if (declared_edges && *declared_edges != static_cast<long long>(edges.size())) {
          throw ParseError(line.number, "Edges declares " + std::to_string(*declared_edges) +
                                            " but " + std::to_string(edges.size()) +
                                            " E lines were given");
        }
      } else if (section == "terminals") {
        if (declared_terminals &&
            *declared_terminals != static_cast<long long>(terminals.size())) {
          throw ParseError(line.number, "Terminals declares " +
                                            std::to_string(*declared_terminals) + " but " +
                                            std::to_string(terminals.size()) +
                                            " T lines were given");
        }
      }
      section.clear();
      continue;
    }
    if (section == "graph") {
      if (key == "nodes") {
        if (tok.size() != 2) throw ParseError(line.number, "malformed Nodes line");
        const long long n = parse_int(tok[1], line.number, "node count");
        if (n < 1) throw ParseError(line.number, "node count must be positive");
        nodes = static_cast<int>(n);
      } else if (key == "edges") {
        if (tok.size() != 2) throw ParseError(line.number, "malformed Edges line");
        declared_edges = parse_int(tok[1], line.number, "edge count");
      } else if (key == "e") {
        if (!nodes) throw ParseError(line.number, "E line before Nodes");
        if (tok.size() != 4) throw ParseError(line.number, "E line needs 3 fields");
        const Vertex u = parse_vertex(tok[1], *nodes, line.number);
        const Vertex v = parse_vertex(tok[2], *nodes, line.number);
        if (u == v) throw ParseError(line.number, "self-loop");
        for (const PendingEdge& p : edges) {
          if (std::min(p.u, p.v) == std::min(u, v) && std::max(p.u, p.v) == std::max(u, v)) {
            throw ValidationError("line " + std::to_string(line.number) +
                                  ": duplicate edge " + tok[1] + " " + tok[2]);
          }
        }
        edges.push_back({u, v, parse_decimal(tok[3], line.number)});
      } else if (key == "a") {
        throw ParseError(line.number, "directed arcs are not supported");
      } else {
        throw ParseError(line.number, "unknown Graph keyword '" + tok[0] + "'");
      }
    } else if (section == "terminals") {
      if (key == "terminals") {
        if (tok.size() != 2) throw ParseError(line.number, "malformed Terminals line");
        declared_terminals = parse_int(tok[1], line.number, "terminal count");
      } else if (key == "t") {
        if (!nodes) throw ParseError(line.number, "T line before the Graph section");
        if (tok.size() != 2) throw ParseError(line.number, "T line needs 1 field");
        const Vertex t = parse_vertex(tok[1], *nodes, line.number);
        if (std::find(terminals.begin(), terminals.end(), t) != terminals.end()) {
          throw ValidationError("line " + std::to_string(line.number) +
                                ": terminal listed twice");
        }
        terminals.push_back(t);
      } else if (warnings) {
        warnings->push_back("line " + std::to_string(line.number) + ": ignoring '" +
                            tok[0] + "'");
      }
    }
    // Comment and unsupported sections: contents ignored.
  }
  const int last = lines.empty() ? 1 : lines.back().number;
  if (!section.empty()) {
    throw ParseError(last, "section opened on line " + std::to_string(section_line) +
                               " is not closed");
  }
  if (!seen_eof) throw ParseError(last, "missing EOF");
  if (!seen_graph) throw ParseError(last, "missing Graph section");
  if (!seen_terminals) throw ParseError(last, "missing Terminals section");

  int decimals = 0;
  for (const PendingEdge& p : edges) {
    decimals = std::max(decimals, static_cast<int>(p.weight.frac.size()));
  }
  std::vector<Edge> scaled;
  scaled.reserve(edges.size());
  for (const PendingEdge& p : edges) {
    scaled.push_back(make_edge(p.u, p.v, scale_decimal(p.weight, decimals)));
  }
  return StpInstance(*nodes, std::move(scaled), std::move(terminals), decimals);
}

}  // namespace

std::string modification_kind(const Modification& mod) {
  struct {
    std::string operator()(const EdgeIncrease&) const { return "edge-inc"; }
    std::string operator()(const EdgeDecrease&) const { return "edge-dec"; }
    std::string operator()(const TerminalAdd&) const { return "terminal-add"; }
    std::string operator()(const TerminalRemove&) const { return "terminal-remove"; }
  } visitor;
  return std::visit(visitor, mod);
}

void check_modification(const StpInstance& instance, const Modification& mod) {
  if (const auto* inc = std::get_if<EdgeIncrease>(&mod)) {
    if (!instance.has_edge(inc->u, inc->v)) throw ValidationError("edge-inc: no such edge");
    if (inc->delta <= 0) throw ValidationError("edge-inc requires delta > 0");
  } else if (const auto* dec = std::get_if<EdgeDecrease>(&mod)) {
    if (!instance.has_edge(dec->u, dec->v)) throw ValidationError("edge-dec: no such edge");
    if (dec->delta <= 0 || dec->delta > instance.edge_cost(dec->u, dec->v)) {
      throw ValidationError("edge-dec requires 0 < delta <= c(e)");
    }
  } else if (const auto* add = std::get_if<TerminalAdd>(&mod)) {
    if (add->t < 0 || add->t >= instance.num_vertices()) {
      throw ValidationError("terminal-add: vertex out of range");
    }
    if (instance.is_terminal(add->t)) {
      throw ValidationError("terminal-add: vertex " + std::to_string(add->t + 1) +
                            " is already a terminal");
    }
  } else if (const auto* rem = std::get_if<TerminalRemove>(&mod)) {
    if (!instance.is_terminal(rem->t)) {
      throw ValidationError("terminal-remove: vertex " + std::to_string(rem->t + 1) +
                            " is not a terminal");
    }
    if (instance.terminals().size() < 2) {
      throw ValidationError("terminal-remove would leave no terminal");
    }
  }
}

StpInstance apply_modification(const StpInstance& instance, const Modification& mod) {
  check_modification(instance, mod);
  if (const auto* inc = std::get_if<EdgeIncrease>(&mod)) {
    return instance.with_edge_cost(inc->u, inc->v,
                                   instance.edge_cost(inc->u, inc->v) + inc->delta);
  }
  if (const auto* dec = std::get_if<EdgeDecrease>(&mod)) {
    return instance.with_edge_cost(dec->u, dec->v,
                                   instance.edge_cost(dec->u, dec->v) - dec->delta);
  }
  std::vector<Vertex> terminals = instance.terminals().items();
  if (const auto* add = std::get_if<TerminalAdd>(&mod)) {
    terminals.push_back(add->t);
  } else {
    std::erase(terminals, std::get<TerminalRemove>(mod).t);
  }
  return instance.with_terminals(std::move(terminals));
}

StpInstance parse_stp(std::string_view text, std::vector<std::string>* warnings) {
  return parse_stp_lines(split_lines(text), warnings);
}

std::string write_stp(const StpInstance& instance) {
  std::ostringstream out;
  out << "33D32945 STP File, STP Format Version 1.0\n\n";
  out << "SECTION Graph\n";
  out << "Nodes " << instance.num_vertices() << "\n";
  out << "Edges " << instance.edges().size() << "\n";
  for (const Edge& e : instance.edges()) {
    out << "E " << e.u + 1 << " " << e.v + 1 << " "
        << format_cost(e.cost, instance.decimals()) << "\n";
  }
  out << "END\n\n";
  out << "SECTION Terminals\n";
  out << "Terminals " << instance.terminals().size() << "\n";
  for (Vertex t : instance.terminals().items()) out << "T " << t + 1 << "\n";
  out << "END\n\nEOF\n";
  return out.str();
}

ScenarioFile parse_scenario(std::string_view text, const FileLoader& loader,
                            std::vector<std::string>* warnings) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() && tokens(lines[i].text).empty()) ++i;
  };
  skip_blank();
  if (i == lines.size()) throw ParseError(1, "empty scenario");
  const auto head = tokens(lines[i].text);
  if (lower(head[0]) != "base" || head.size() != 2) {
    throw ParseError(lines[i].number, "scenario must start with 'BASE <path|inline>'");
  }
  const int base_line = lines[i].number;
  ++i;

  std::optional<StpInstance> base;
  if (lower(head[1]) == "inline") {
    std::vector<Line> block;
    bool closed = false;
    for (; i < lines.size(); ++i) {
      block.push_back(lines[i]);
      const auto tok = tokens(lines[i].text);
      if (!tok.empty() && lower(tok[0]) == "eof") {
        closed = true;
        ++i;
        break;
      }
    }
    if (!closed) throw ParseError(base_line, "inline STP block has no EOF");
    base = parse_stp_lines(block, warnings);
  } else {
    if (!loader) throw ParseError(base_line, "no loader for BASE " + head[1]);
    base = parse_stp(loader(head[1]), warnings);
  }

  struct RawMod {
    std::string kind;
    std::vector<std::string> args;
    int line;
  };
  std::optional<long long> declared_solution;
  std::vector<std::pair<Vertex, Vertex>> solution_edges;
  std::optional<Ratio> rho;
  std::optional<RawMod> raw_mod;
  bool seen_eof = false;
  int last = base_line;

  for (; i < lines.size(); ++i) {
    const auto tok = tokens(lines[i].text);
    const int ln = lines[i].number;
    last = ln;
    if (tok.empty()) continue;
    if (seen_eof) throw ParseError(ln, "content after EOF");
    const std::string key = lower(tok[0]);
    if (key == "solution") {
      if (declared_solution) throw ParseError(ln, "duplicate SOLUTION line");
      if (tok.size() != 2) throw ParseError(ln, "malformed SOLUTION line");
      declared_solution = parse_int(tok[1], ln, "solution edge count");
    } else if (key == "se") {
      if (!declared_solution) throw ParseError(ln, "SE line before SOLUTION");
      if (tok.size() != 3) throw ParseError(ln, "SE line needs 2 fields");
      const Vertex u = parse_vertex(tok[1], base->num_vertices(), ln);
      const Vertex v = parse_vertex(tok[2], base->num_vertices(), ln);
      if (!base->has_edge(u, v)) {
        throw ValidationError("line " + std::to_string(ln) + ": solution edge " + tok[1] +
                              " " + tok[2] + " is not in the graph");
      }
      solution_edges.emplace_back(u, v);
    } else if (key == "rho") {
      if (rho) throw ParseError(ln, "duplicate RHO line");
      if (tok.size() != 2) throw ParseError(ln, "malformed RHO line");
      const auto slash = tok[1].find('/');
      const long long p = parse_int(tok[1].substr(0, slash), ln, "rho numerator");
      const long long q =
          slash == std::string::npos ? 1 : parse_int(tok[1].substr(slash + 1), ln, "rho denominator");
      if (q <= 0) throw ParseError(ln, "rho denominator must be positive");
      rho = Ratio(p, q);
      if (*rho < Ratio(1)) throw ValidationError("line " + std::to_string(ln) + ": rho must be >= 1");
    } else if (key == "mod") {
      if (raw_mod) throw ParseError(ln, "only one MOD line is allowed");
      if (tok.size() < 2) throw ParseError(ln, "MOD needs a kind");
      raw_mod = RawMod{lower(tok[1]), {tok.begin() + 2, tok.end()}, ln};
    } else if (key == "eof") {
      seen_eof = true;
    } else {
      throw ParseError(ln, "unknown scenario keyword '" + tok[0] + "'");
    }
  }
  if (!seen_eof) throw ParseError(last, "missing EOF");
  if (!declared_solution) throw ParseError(last, "missing SOLUTION");
  if (!raw_mod) throw ParseError(last, "missing MOD");
  if (*declared_solution != static_cast<long long>(solution_edges.size())) {
    throw ParseError(last, "SOLUTION declares " + std::to_string(*declared_solution) +
                               " edges but " + std::to_string(solution_edges.size()) +
                               " SE lines were given");
  }

  StpInstance instance = *base;
  Modification mod;
  const int ln = raw_mod->line;
  const auto& args = raw_mod->args;
  if (raw_mod->kind == "edge-inc" || raw_mod->kind == "edge-dec") {
    if (args.size() != 3) throw ParseError(ln, raw_mod->kind + " needs <u> <v> <delta>");
    const Vertex u = parse_vertex(args[0], instance.num_vertices(), ln);
    const Vertex v = parse_vertex(args[1], instance.num_vertices(), ln);
    const Decimal delta = parse_decimal(args[2], ln);
    const int decimals = std::max(instance.decimals(), static_cast<int>(delta.frac.size()));
    if (decimals != instance.decimals()) instance = instance.rescaled(decimals);
    const Cost scaled = scale_decimal(delta, decimals);
    if (raw_mod->kind == "edge-inc") {
      mod = EdgeIncrease{std::min(u, v), std::max(u, v), scaled};
    } else {
      mod = EdgeDecrease{std::min(u, v), std::max(u, v), scaled};
    }
  } else if (raw_mod->kind == "terminal-add" || raw_mod->kind == "terminal-remove") {
    if (args.size() != 1) throw ParseError(ln, raw_mod->kind + " needs <t>");
    const Vertex t = parse_vertex(args[0], instance.num_vertices(), ln);
    if (raw_mod->kind == "terminal-add") {
      mod = TerminalAdd{t};
    } else {
      mod = TerminalRemove{t};
    }
  } else {
    throw ParseError(ln, "unknown modification '" + raw_mod->kind + "'");
  }
  try {
    check_modification(instance, mod);
  } catch (const ValidationError& e) {
    throw ValidationError("line " + std::to_string(ln) + ": " + e.what());
  }

  std::vector<Edge> edges;
  for (auto [u, v] : solution_edges) edges.push_back(make_edge(u, v, instance.edge_cost(u, v)));
  Forest solution;
  try {
    std::vector<Vertex> extra;
    if (edges.empty()) extra = instance.terminals().items();
    solution = Forest(std::move(edges), std::move(extra));
  } catch (const InternalError&) {
    throw ValidationError("provided solution contains a cycle");
  }
  if (!is_steiner_tree(solution, instance)) {
    throw ValidationError(
        "provided solution is not a Steiner tree with terminal leaves");
  }
  return ScenarioFile{std::move(instance), std::move(solution), rho.value_or(Ratio(1)),
                      mod};
}

std::string write_scenario(const ScenarioFile& scenario) {
  std::ostringstream out;
  out << "BASE inline\n" << write_stp(scenario.base) << "\n";
  out << "SOLUTION " << scenario.solution.edges().size() << "\n";
  for (const Edge& e : scenario.solution.edges()) {
    out << "SE " << e.u + 1 << " " << e.v + 1 << "\n";
  }
  out << "RHO " << format_ratio(scenario.rho) << "\n";
  const int dec = scenario.base.decimals();
  out << "MOD " << modification_kind(scenario.modification);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EdgeIncrease> || std::is_same_v<T, EdgeDecrease>) {
          out << " " << m.u + 1 << " " << m.v + 1 << " " << format_cost(m.delta, dec);
        } else {
          out << " " << m.t + 1;
        }
      },
      scenario.modification);
  out << "\nEOF\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string write_solution(const Forest& tree, int decimals) {
  std::ostringstream out;
  out << "COST " << format_cost(tree.cost(), decimals) << "\n";
  out << "SOLUTION " << tree.edges().size() << "\n";
  for (const Edge& e : tree.edges()) out << "SE " << e.u + 1 << " " << e.v + 1 << "\n";
  return out.str();
}

}  // namespace streopt
