#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tpro/dynamics.hpp"
#include "tpro/enumeration.hpp"
#include "tpro/error.hpp"
#include "tpro/graph.hpp"
#include "tpro/graph_source.hpp"
#include "tpro/io.hpp"
#include "tpro/stone_diagram.hpp"
#include "tpro/suites.hpp"
#include "tpro/theorems.hpp"

namespace {

using namespace tpro;

enum Exit : int { kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3 };

struct Common {
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = kDefaultBudget;
  std::size_t jobs = 0;
};

struct GraphArgs {
  std::string graph;
  std::string graph_json;
  std::string junctions;
};

struct StateArgs {
  std::string state;
  Label active = 1;
  std::string state_json;
};

void add_graph_options(CLI::App* cmd, GraphArgs& a) {
  auto* g = cmd->add_option("--graph", a.graph, "family token (K4, path:5, cycle:5, pruefer:0-0) or chain:<blocks>");
  auto* j = cmd->add_option("--graph-json", a.graph_json, "graph JSON file")->check(CLI::ExistingFile);
  g->excludes(j);
  cmd->add_option("--junctions", a.junctions, "chain junctions, e.g. 0:1,2:0");
}

void add_state_options(CLI::App* cmd, StateArgs& a) {
  auto* s = cmd->add_option("--state", a.state, "one-line labeling, e.g. 2413 or 10,2,3,...");
  cmd->add_option("--active", a.active, "active label (1-based)");
  auto* j = cmd->add_option("--state-json", a.state_json, "state JSON file")->check(CLI::ExistingFile);
  s->excludes(j);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

SimpleGraph load_graph(const GraphArgs& a) {
  if (!a.graph_json.empty()) return graph_from_json(read_json(a.graph_json));
  if (a.graph.empty()) throw InvalidArgument("one of --graph or --graph-json is required");
  return parse_graph(a.graph, a.junctions);
}

State load_state(const StateArgs& a, std::size_t n) {
  if (!a.state_json.empty()) return state_from_json(read_json(a.state_json));
  if (a.state.empty()) return State(Labeling::identity(n), a.active);
  return State::parse(a.state, a.active);
}

std::string trace_line(std::uint64_t t, const State& s) {
  return std::to_string(t) + ": " + s.labeling.to_string() + " | " + std::to_string(s.active);
}

EnumerationPlan make_plan(const Common& c, std::uint64_t samples) {
  const std::size_t shards = resolve_jobs(c.jobs);
  EnumerationPlan p = samples > 0 ? EnumerationPlan::sampled(samples, c.seed) : EnumerationPlan::exhaustive(shards);
  p.seed = c.seed;
  p.budget = c.budget;
  p.partition = shards;
  p.jobs = c.jobs;
  return p;
}

void echo_header(const std::string& cmd, const Common& c) {
  std::cerr << "# tpro " << cmd << " seed=" << c.seed << " budget=" << c.budget << "\n";
}

// ---------------------------------------------------------------------------

struct OrbitArgs {
  GraphArgs graph;
  StateArgs state;
  bool trace = false;
  std::string render;
  std::string out;
};

int cmd_orbit(const OrbitArgs& a, const Common& c) {
  const SimpleGraph g = load_graph(a.graph);
  const State s = load_state(a.state, g.vertex_count());
  check_state_for(g, s);
  std::uint64_t length = 0;
  if (!a.trace && a.render.empty()) {
    try {
      length = orbit_length(g, s, c.budget).length;
    } catch (const CapExceeded&) {
      throw BudgetExceeded("orbit did not close within the budget of " + std::to_string(c.budget) + " steps");
    }
    std::cout << length << "\n";
    return kOk;
  }
  std::vector<State> orbit;
  try {
    orbit = orbit_states(g, s, c.budget);
  } catch (const CapExceeded&) {
    throw BudgetExceeded("orbit did not close within the budget of " + std::to_string(c.budget) + " steps");
  }
  length = orbit.size();
  if (a.trace) {
    for (std::uint64_t t = 0; t < orbit.size(); ++t) std::cout << trace_line(t, orbit[t]) << "\n";
    std::cout << trace_line(length, s) << "\n";
  }
  if (!a.render.empty()) {
    std::vector<StoneDiagram> panels;
    for (const State& st : orbit) panels.push_back(from_state(st));
    panels.push_back(from_state(s));
    const std::string text = render(panels, a.render);
    if (a.out.empty()) {
      std::cout << text;
    } else {
      write_file(a.out, text);
    }
  }
  std::cout << length << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  SuiteOptions options;
  std::string json_out;
  std::string csv_out;
};

int cmd_verify(VerifyArgs a, const Common& c) {
  a.options.seed = c.seed;
  a.options.budget = c.budget;
  a.options.jobs = c.jobs;
  echo_header("verify --suite " + a.suite, c);
  const SuiteReport rep = run_suite(a.suite, a.options);
  std::uint64_t failures = 0;
  for (const auto& sc : rep.cases) {
    failures += sc.failures;
    std::cout << (sc.passed() ? "PASS " : "FAIL ") << sc.description << "  [" << sc.graph_id << "] checked=" << sc.checked
              << " failures=" << sc.failures;
    if (!sc.detail.empty()) std::cout << " (" << sc.detail << ")";
    std::cout << "\n";
  }
  std::cout << "suite " << rep.name << ": " << rep.cases.size() << " cases, " << failures << " failures, "
            << (rep.passed() ? "PASS" : "FAIL") << "\n";
  if (!a.json_out.empty()) {
    json cases = json::array();
    for (const auto& sc : rep.cases) {
      cases.push_back({{"description", sc.description},
                       {"graph_id", sc.graph_id},
                       {"checked", sc.checked},
                       {"failures", sc.failures},
                       {"detail", sc.detail},
                       {"passed", sc.passed()}});
    }
    json mism = json::array();
    for (const auto& r : rep.rows) mism.push_back(row_to_json(r));
    const json j = {{"suite", rep.name}, {"seed", rep.seed},   {"budget", c.budget},     {"steps", rep.steps},
                    {"cases", cases},    {"mismatches", mism}, {"passed", rep.passed()}};
    write_file(a.json_out, j.dump(2) + "\n");
  }
  if (!a.csv_out.empty()) {
    std::string csv = std::string(kReportCsvHeader) + "\n";
    for (const auto& r : rep.rows) csv += csv_row(r) + "\n";
    write_file(a.csv_out, csv);
  }
  return rep.passed() ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------

struct ExploreArgs {
  std::string conjecture;
  std::string blocks;
  std::string junctions;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t nu = 0;
  std::string tree;
  Vertex other_junction = 0;
  Vertex cycle_junction = 0;
  std::uint64_t samples = 0;
  std::string json_out;
};

int cmd_explore(const ExploreArgs& a, const Common& c) {
  const EnumerationPlan plan = make_plan(c, a.samples);
  echo_header("explore --conjecture " + a.conjecture, c);
  if (a.conjecture == "chain") {
    if (a.blocks.empty()) throw InvalidArgument("--blocks is required for the chain conjecture");
    const SimpleGraph g = build_chain(parse_chain(a.blocks, a.junctions));
    const ChainExploration ex = explore_chain(g, plan);
    std::cout << census_csv(ex.census);
    std::cerr << "# graph " << ex.graph_id << " N=" << ex.vertex_count << " N(N-1)=" << ex.predicted
              << " states off N(N-1): " << ex.counterexample_count << "\n";
    if (!a.json_out.empty()) write_file(a.json_out, chain_to_json(ex, g).dump(2) + "\n");
    return ex.census.complete ? kOk : kBudget;
  }
  if (a.conjecture == "tree-cycle" || a.conjecture == "complete-cycle") {
    if (a.nu == 0) throw InvalidArgument("--nu is required");
    const bool tree = a.conjecture == "tree-cycle";
    SimpleGraph other(1, {});
    if (tree) {
      if (!a.tree.empty()) {
        other = build(parse_family(a.tree));
      } else {
        if (a.m == 0) throw InvalidArgument("--m or --tree is required for tree-cycle");
        other = build(GraphFamilySpec::path(a.m));
      }
    } else {
      if (a.n == 0) throw InvalidArgument("--n is required for complete-cycle");
      other = build(GraphFamilySpec::complete(a.n));
    }
    const WindingInput in = make_cycle_bridge(other, tree ? BlockKind::tree : BlockKind::complete, a.nu,
                                              a.other_junction, a.cycle_junction);
    const CycleExploration ex = explore_cycle_bridge(in, plan);
    std::cout << winding_csv(ex);
    std::cerr << "# literal and inferred w agree on " << ex.agreement_rate() * 100.0 << "% of states\n";
    if (!a.json_out.empty()) write_file(a.json_out, winding_to_json(ex).dump(2) + "\n");
    return kOk;
  }
  throw InvalidArgument("unknown conjecture '" + a.conjecture + "' (chain, tree-cycle, complete-cycle)");
}

// ---------------------------------------------------------------------------

struct CensusArgs {
  GraphArgs graph;
  std::uint64_t samples = 0;
  std::string json_out;
};

int cmd_census(const CensusArgs& a, const Common& c) {
  const SimpleGraph g = load_graph(a.graph);
  const OrbitCensus cs = census(g, make_plan(c, a.samples));
  std::cout << census_csv(cs);
  if (!a.json_out.empty()) write_file(a.json_out, census_to_json(cs, g).dump(2) + "\n");
  if (!cs.complete) {
    std::cerr << "census stopped at the budget of " << c.budget << " steps; counts are partial\n";
    return kBudget;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct RenderArgs {
  GraphArgs graph;
  StateArgs state;
  std::string format = "ascii";
  std::optional<std::uint64_t> steps;
  std::string out;
};

int cmd_render(const RenderArgs& a, const Common& c) {
  const SimpleGraph g = load_graph(a.graph);
  const State s = load_state(a.state, g.vertex_count());
  StoneDiagram sd = from_state(g, s);
  std::uint64_t steps = 0;
  if (a.steps) {
    steps = *a.steps;
  } else {
    try {
      steps = orbit_length(g, s, c.budget).length;
    } catch (const CapExceeded&) {
      throw BudgetExceeded("orbit did not close within the budget of " + std::to_string(c.budget) + " steps");
    }
  }
  if (steps > c.budget) throw BudgetExceeded("--steps exceeds the budget");
  std::vector<StoneDiagram> panels{sd};
  for (std::uint64_t t = 0; t < steps; ++t) {
    sd = sd_step(g, sd);
    panels.push_back(sd);
  }
  const std::string text = render(panels, a.format);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct GraphCmdArgs {
  std::string family;
  std::string g1;
  std::string g2;
  Vertex attach = 0;
  Vertex j1 = 0;
  Vertex j2 = 0;
  std::string junctions;
  std::string dot_out;
  std::string json_out;
};

int cmd_graph(const GraphCmdArgs& a) {
  SimpleGraph g(1, {});
  if (a.family == "corona" || a.family == "bridge") {
    if (a.g1.empty() || a.g2.empty()) throw InvalidArgument("--g1 and --g2 are required for " + a.family);
    const SimpleGraph g1 = parse_graph(a.g1);
    const SimpleGraph g2 = parse_graph(a.g2);
    g = a.family == "corona" ? corona_product(g1, g2, a.attach) : bridge_sum(g1, a.j1, g2, a.j2);
  } else {
    g = parse_graph(a.family, a.junctions);
  }
  if (!a.dot_out.empty()) write_file(a.dot_out, to_dot(g));
  if (!a.json_out.empty()) write_file(a.json_out, graph_to_json(g).dump(2) + "\n");
  const GraphClass cls = classify(g);
  std::cout << "id=" << graph_id(g) << " vertices=" << g.vertex_count() << " edges=" << g.edge_count()
            << " connected=" << (cls.is_connected ? "yes" : "no") << " bridges=" << find_bridges(g).size() << "\n";
  if (a.dot_out.empty() && a.json_out.empty()) std::cout << graph_to_json(g).dump() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toric promotion on labeled simple graphs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  app.add_option("--seed", common.seed, "seed for every random choice")->envname("TPRO_SEED");
  app.add_option("--budget", common.budget, "cap on TPro steps per invocation")->envname("TPRO_BUDGET");
  app.add_option("--jobs", common.jobs, "worker threads (0 = available parallelism)")->envname("TPRO_JOBS");
  app.fallthrough();

  OrbitArgs orbit;
  auto* orbit_cmd = app.add_subcommand("orbit", "replay one orbit and print its length");
  add_graph_options(orbit_cmd, orbit.graph);
  add_state_options(orbit_cmd, orbit.state);
  orbit_cmd->add_flag("--trace", orbit.trace, "print every state of the orbit");
  orbit_cmd->add_option("--render", orbit.render, "emit stone diagrams: ascii, svg or dot");
  orbit_cmd->add_option("--out", orbit.out, "file for the rendering");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", verify.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--max-n", verify.options.max_n, "largest complete graph");
  verify_cmd->add_option("--max-m", verify.options.max_m, "largest tree");
  verify_cmd->add_option("--max-N", verify.options.max_total, "largest composed graph");
  verify_cmd->add_option("--max-attached", verify.options.max_attached, "largest attached block");
  verify_cmd->add_option("--cycles", verify.options.cycle_sizes, "cycle sizes for restriction and lemma suites");
  verify_cmd->add_option("--json", verify.json_out, "JSON report file");
  verify_cmd->add_option("--csv", verify.csv_out, "CSV file of mismatching states");

  ExploreArgs explore;
  auto* explore_cmd = app.add_subcommand("explore", "emit evidence tables for an open conjecture");
  explore_cmd->add_option("--conjecture", explore.conjecture, "chain, tree-cycle or complete-cycle")->required();
  explore_cmd->add_option("--blocks", explore.blocks, "chain blocks, e.g. K2,K2,K2");
  explore_cmd->add_option("--junctions", explore.junctions, "chain junctions, e.g. 0:1,1:0");
  explore_cmd->add_option("--m", explore.m, "path size for tree-cycle");
  explore_cmd->add_option("--tree", explore.tree, "tree token for tree-cycle, e.g. star:4 or pruefer:1-1");
  explore_cmd->add_option("--n", explore.n, "complete graph size for complete-cycle");
  explore_cmd->add_option("--nu", explore.nu, "cycle size");
  explore_cmd->add_option("--other-junction", explore.other_junction, "bridge endpoint in the tree or complete block");
  explore_cmd->add_option("--cycle-junction", explore.cycle_junction, "bridge endpoint in the cycle");
  explore_cmd->add_option("--samples", explore.samples, "sample this many states instead of enumerating");
  explore_cmd->add_option("--json", explore.json_out, "JSON evidence file");

  CensusArgs census_args;
  auto* census_cmd = app.add_subcommand("census", "histogram of orbit lengths over all states");
  add_graph_options(census_cmd, census_args.graph);
  census_cmd->add_option("--samples", census_args.samples, "sample this many states instead of enumerating");
  census_cmd->add_option("--json", census_args.json_out, "JSON census file");

  RenderArgs render_args;
  auto* render_cmd = app.add_subcommand("render", "draw stone diagrams along an orbit");
  add_graph_options(render_cmd, render_args.graph);
  add_state_options(render_cmd, render_args.state);
  render_cmd->add_option("--format", render_args.format, "ascii, svg or dot")
      ->check(CLI::IsMember({"ascii", "svg", "dot"}));
  render_cmd->add_option("--steps", render_args.steps, "number of steps (default: one full orbit)");
  render_cmd->add_option("--out", render_args.out, "output file");

  GraphCmdArgs graph_args;
  auto* graph_cmd = app.add_subcommand("graph", "build a graph and export it");
  graph_cmd->add_option("--family", graph_args.family, "corona, bridge, or a graph token")->required();
  graph_cmd->add_option("--g1", graph_args.g1, "first operand");
  graph_cmd->add_option("--g2", graph_args.g2, "second operand");
  graph_cmd->add_option("--attach", graph_args.attach, "corona attachment vertex of g2");
  graph_cmd->add_option("--j1", graph_args.j1, "bridge endpoint in g1");
  graph_cmd->add_option("--j2", graph_args.j2, "bridge endpoint in g2");
  graph_cmd->add_option("--junctions", graph_args.junctions, "chain junctions");
  graph_cmd->add_option("--dot", graph_args.dot_out, "DOT output file");
  graph_cmd->add_option("--json", graph_args.json_out, "graph JSON output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*orbit_cmd) return cmd_orbit(orbit, common);
    if (*verify_cmd) return cmd_verify(verify, common);
    if (*explore_cmd) return cmd_explore(explore, common);
    if (*census_cmd) return cmd_census(census_args, common);
    if (*render_cmd) return cmd_render(render_args, common);
    if (*graph_cmd) return cmd_graph(graph_args);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
