#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "tpro/dynamics.hpp"
#include "tpro/enumeration.hpp"
#include "tpro/error.hpp"
#include "tpro/graph.hpp"
#include "tpro/theorems.hpp"

namespace tpro {

// Named verification suites. Each suite walks a family of graphs and checks
// one orbit-length statement on all of them.

struct SuiteOptions {
  std::size_t max_n = 6;        // complete graphs
  std::size_t max_m = 6;        // trees
  std::size_t max_total = 7;    // vertices of composed graphs
  std::size_t max_attached = 3; // block size in restriction/lemma suites
  std::vector<std::size_t> cycle_sizes{4, 5};
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = kDefaultBudget;
  std::size_t jobs = 0;
};

struct SuiteCase {
  std::string description;
  std::string graph_id;
  std::uint64_t checked = 0;   // states, classes or excursions, per suite
  std::uint64_t failures = 0;
  std::string detail;

  bool passed() const { return failures == 0 && checked > 0; }
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::vector<SuiteCase> cases;
  std::vector<StateRow> rows;  // mismatching states, for the CSV report

  bool passed() const {
    return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const SuiteCase& c) { return c.passed(); });
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "trees",          "complete",         "complete-bridge-complete", "tree-bridge-complete",
      "corona",         "restriction-tree", "restriction-complete",     "lemma-tree-bridge",
      "lemma-complete-bridge", "lemma-directional"};
  return names;
}

namespace detail {

// Charges the exhaustive cost of one graph against the suite budget.
class SuiteBudget {
 public:
  explicit SuiteBudget(std::uint64_t limit) : limit_(limit) {}
  void charge_exhaustive(std::size_t n) {
    used_ += factorial_times_n(n);
    if (used_ > limit_) throw BudgetExceeded("suite exceeded budget of " + std::to_string(limit_) + " steps");
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

inline EnumerationPlan plan_for(const SuiteOptions& o) {
  EnumerationPlan p = EnumerationPlan::exhaustive(std::max<std::size_t>(1, resolve_jobs(o.jobs)));
  p.jobs = o.jobs;
  p.seed = o.seed;
  p.budget = o.budget;
  return p;
}

inline std::string edges_string(const SimpleGraph& g) {
  std::string s;
  for (const Edge& e : g.edges()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(e.u) + "-" + std::to_string(e.v);
  }
  return s;
}

inline void family_case(SuiteReport& rep, SuiteBudget& budget, const SuiteOptions& o, const SimpleGraph& g,
                        const Composition& c, std::string description) {
  budget.charge_exhaustive(g.vertex_count());
  const FamilyReport fr = verify_family(g, predict(g, c), plan_for(o), description);
  SuiteCase sc{std::move(description), fr.graph_id, fr.states_checked, fr.mismatches.size(), ""};
  sc.detail = "predicted " + std::to_string(*fr.prediction.length);
  rep.cases.push_back(std::move(sc));
  rep.rows.insert(rep.rows.end(), fr.mismatches.begin(), fr.mismatches.end());
}

// S(js) bridged with block(jb); S takes vertices [0, |S|).
struct AttachedInstance {
  SimpleGraph graph;
  std::vector<Vertex> fixed_part;
  Edge bridge;
  Vertex block_endpoint = 0;
  std::string description;
};

inline std::vector<AttachedInstance> attached_instances(const SuiteOptions& o, BlockKind kind,
                                                        std::vector<std::size_t> cycles) {
  std::vector<AttachedInstance> out;
  for (std::size_t nu : cycles) {
    const SimpleGraph s = build(GraphFamilySpec::cycle(nu));
    for (std::size_t size = 1; size <= o.max_attached; ++size) {
      std::vector<std::pair<SimpleGraph, std::string>> blocks;
      if (kind == BlockKind::tree) {
        for (const auto& seq : all_pruefer_sequences(size)) {
          blocks.emplace_back(tree_from_pruefer(size, seq), "tree" + std::to_string(size) + "[" +
                                                                edges_string(tree_from_pruefer(size, seq)) + "]");
        }
      } else {
        blocks.emplace_back(build(GraphFamilySpec::complete(size)), "K" + std::to_string(size));
      }
      for (const auto& [block, name] : blocks) {
        for (Vertex js = 0; js < nu; ++js) {
          for (Vertex jb = 0; jb < size; ++jb) {
            AttachedInstance inst;
            inst.graph = bridge_sum(s, js, block, jb);
            for (Vertex v = 0; v < nu; ++v) inst.fixed_part.push_back(v);
            inst.block_endpoint = static_cast<Vertex>(nu + jb);
            inst.bridge = Edge(js, inst.block_endpoint);
            inst.description = "C" + std::to_string(nu) + "(" + std::to_string(js) + ") + " + name + "(" +
                               std::to_string(jb) + ")";
            out.push_back(std::move(inst));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  SuiteReport rep;
  rep.name = name;
  rep.seed = o.seed;
  detail::SuiteBudget budget(o.budget);
  const auto plan = detail::plan_for(o);

  if (name == "trees") {
    for (std::size_t m = 1; m <= o.max_m; ++m) {
      for (const auto& seq : all_pruefer_sequences(m)) {
        const SimpleGraph t = tree_from_pruefer(m, seq);
        detail::family_case(rep, budget, o, t, Composition::single(BlockKind::tree, m),
                            "tree" + std::to_string(m) + "[" + detail::edges_string(t) + "]");
      }
    }
  } else if (name == "complete") {
    for (std::size_t n = 1; n <= o.max_n; ++n) {
      const SimpleGraph k = build(GraphFamilySpec::complete(n));
      detail::family_case(rep, budget, o, k, Composition::single(BlockKind::complete, n), "K" + std::to_string(n));
      SuiteCase sc{"K" + std::to_string(n) + " labeling constant", graph_id(k), factorial_times_n(n),
                   labeling_constant_on_orbits(k) ? 0U : 1U, ""};
      rep.cases.push_back(sc);
    }
  } else if (name == "complete-bridge-complete") {
    for (std::size_t n1 = 1; n1 <= o.max_total; ++n1) {
      for (std::size_t n2 = n1; n1 + n2 <= o.max_total; ++n2) {
        const SimpleGraph k1 = build(GraphFamilySpec::complete(n1));
        const SimpleGraph k2 = build(GraphFamilySpec::complete(n2));
        for (Vertex a = 0; a < n1; ++a) {
          for (Vertex b = 0; b < n2; ++b) {
            detail::family_case(rep, budget, o, bridge_sum(k1, a, k2, b),
                                Composition::bridge({BlockKind::complete, n1}, {BlockKind::complete, n2}),
                                "K" + std::to_string(n1) + "(" + std::to_string(a) + ") + K" + std::to_string(n2) +
                                    "(" + std::to_string(b) + ")");
          }
        }
      }
    }
  } else if (name == "tree-bridge-complete") {
    for (std::size_t m = 1; m < o.max_total; ++m) {
      const auto rooted = rooted_tree_representatives(m);
      for (std::size_t n = 1; m + n <= o.max_total; ++n) {
        const SimpleGraph k = build(GraphFamilySpec::complete(n));
        for (const auto& [tree, root] : rooted) {
          for (Vertex b = 0; b < n; ++b) {
            detail::family_case(rep, budget, o, bridge_sum(tree, root, k, b),
                                Composition::bridge({BlockKind::tree, m}, {BlockKind::complete, n}),
                                "tree" + std::to_string(m) + "[" + detail::edges_string(tree) + "](" +
                                    std::to_string(root) + ") + K" + std::to_string(n) + "(" + std::to_string(b) + ")");
          }
        }
      }
    }
  } else if (name == "corona") {
    for (std::size_t n = 1; n <= o.max_total; ++n) {
      for (std::size_t m = 1; n * m + n <= o.max_total; ++m) {
        const SimpleGraph k = build(GraphFamilySpec::complete(n));
        for (const auto& [tree, root] : rooted_tree_representatives(m)) {
          detail::family_case(rep, budget, o, corona_product(k, tree, root), Composition::corona(n, m),
                              "K" + std::to_string(n) + " corona tree" + std::to_string(m) + "[" +
                                  detail::edges_string(tree) + "](" + std::to_string(root) + ")");
        }
      }
    }
  } else if (name == "restriction-tree" || name == "restriction-complete") {
    const BlockKind kind = name == "restriction-tree" ? BlockKind::tree : BlockKind::complete;
    for (const auto& inst : detail::attached_instances(o, kind, o.cycle_sizes)) {
      budget.charge_exhaustive(inst.graph.vertex_count());
      const auto rr = verify_restriction_independence_exhaustive(inst.graph, inst.fixed_part, plan);
      rep.cases.push_back({inst.description, graph_id(inst.graph), rr.classes_checked, rr.violations.size(),
                           std::to_string(rr.states_checked) + " states"});
    }
  } else if (name == "lemma-tree-bridge" || name == "lemma-complete-bridge") {
    const bool tree = name == "lemma-tree-bridge";
    std::vector<std::size_t> cycles{3};
    cycles.insert(cycles.end(), o.cycle_sizes.begin(), o.cycle_sizes.end());
    for (const auto& inst : detail::attached_instances(o, tree ? BlockKind::tree : BlockKind::complete, cycles)) {
      budget.charge_exhaustive(inst.graph.vertex_count());
      SuiteCase sc{inst.description, graph_id(inst.graph), 0, 0, ""};
      std::uint64_t orbits = 0;
      for (const State& rep_state : orbit_representatives(inst.graph, plan)) {
        const auto lr = verify_lemma_sd_rotation(inst.graph, rep_state, inst.bridge, inst.block_endpoint,
                                                 tree ? SideKind::tree : SideKind::complete);
        sc.checked += lr.excursions.size();
        sc.failures += lr.failures();
        ++orbits;
        if (lr.excursions.empty()) ++sc.failures;  // every orbit must cross the bridge
      }
      sc.detail = std::to_string(orbits) + " orbits";
      rep.cases.push_back(std::move(sc));
    }
  } else if (name == "lemma-directional") {
    // (graph, complete blocks) pairs
    std::vector<std::tuple<SimpleGraph, std::vector<std::vector<Vertex>>, std::string>> work;
    for (std::size_t n = 1; n <= o.max_n; ++n) {
      std::vector<Vertex> all(n);
      std::iota(all.begin(), all.end(), Vertex{0});
      work.emplace_back(build(GraphFamilySpec::complete(n)), std::vector<std::vector<Vertex>>{all}, "K" + std::to_string(n));
    }
    for (std::size_t n1 = 1; n1 <= o.max_total; ++n1) {
      for (std::size_t n2 = n1; n1 + n2 <= o.max_total; ++n2) {
        std::vector<Vertex> a(n1), b(n2);
        std::iota(a.begin(), a.end(), Vertex{0});
        std::iota(b.begin(), b.end(), static_cast<Vertex>(n1));
        work.emplace_back(bridge_sum(build(GraphFamilySpec::complete(n1)), 0, build(GraphFamilySpec::complete(n2)), 0),
                          std::vector<std::vector<Vertex>>{a, b},
                          "K" + std::to_string(n1) + " + K" + std::to_string(n2));
      }
    }
    std::vector<std::size_t> cycles{3};
    cycles.insert(cycles.end(), o.cycle_sizes.begin(), o.cycle_sizes.end());
    for (const auto& inst : detail::attached_instances(o, BlockKind::complete, cycles)) {
      std::vector<Vertex> block;
      for (Vertex v = static_cast<Vertex>(inst.fixed_part.size()); v < inst.graph.vertex_count(); ++v) block.push_back(v);
      work.emplace_back(inst.graph, std::vector<std::vector<Vertex>>{block}, inst.description);
    }
    for (const auto& [g, blocks, description] : work) {
      budget.charge_exhaustive(g.vertex_count());
      SuiteCase sc{description, graph_id(g), 0, 0, ""};
      std::uint64_t in_block = 0;
      for (const State& s : orbit_representatives(g, plan)) {
        const std::uint64_t len = orbit_length(g, s).length;
        for (const auto& block : blocks) {
          const auto dr = verify_directional(g, s, block, len);
          sc.checked += dr.steps_checked;
          in_block += dr.steps_in_block;
          sc.failures += dr.violation_times.size();
        }
      }
      sc.detail = std::to_string(in_block) + " steps with the coin in a complete block";
      rep.cases.push_back(std::move(sc));
    }
  } else {
    throw InvalidArgument("unknown suite '" + name + "'");
  }
  rep.steps = budget.used();
  return rep;
}

}  // namespace tpro
