#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tpro/dynamics.hpp"
#include "tpro/enumeration.hpp"
#include "tpro/error.hpp"
#include "tpro/graph.hpp"
#include "tpro/stone_diagram.hpp"

namespace tpro {

// ---------------------------------------------------------------------------
// Compositions and predictions

enum class BlockKind { tree, complete, cycle };

inline std::string to_string(BlockKind k) {
  switch (k) {
    case BlockKind::tree: return "tree";
    case BlockKind::complete: return "complete";
    case BlockKind::cycle: return "cycle";
  }
  return "?";
}

struct Block {
  BlockKind kind = BlockKind::tree;
  std::size_t size = 1;
  bool operator==(const Block&) const = default;
};

// Declared structure of a graph. `corona` holds {complete n, tree m}.
struct Composition {
  enum class Shape { single, bridge_sum, corona, chain };
  Shape shape = Shape::single;
  std::vector<Block> blocks;

  static Composition single(BlockKind k, std::size_t size) { return {Shape::single, {{k, size}}}; }
  static Composition bridge(Block a, Block b) { return {Shape::bridge_sum, {a, b}}; }
  static Composition corona(std::size_t n, std::size_t m) {
    return {Shape::corona, {{BlockKind::complete, n}, {BlockKind::tree, m}}};
  }
  static Composition chain(std::vector<Block> blocks) { return {Shape::chain, std::move(blocks)}; }

  std::size_t vertex_count() const {
    if (shape == Shape::corona) return blocks[0].size + blocks[0].size * blocks[1].size;
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.size;
    return total;
  }
  bool operator==(const Composition&) const = default;
};

enum class FormulaId {
  tree,
  complete,
  complete_bridge_complete,
  tree_bridge_complete,
  corona_complete_tree,
  conjecture_chain,
  conjecture_tree_cycle,
  conjecture_complete_cycle,
};

inline std::string to_string(FormulaId f) {
  switch (f) {
    case FormulaId::tree: return "tree";
    case FormulaId::complete: return "complete";
    case FormulaId::complete_bridge_complete: return "complete_bridge_complete";
    case FormulaId::tree_bridge_complete: return "tree_bridge_complete";
    case FormulaId::corona_complete_tree: return "corona_complete_tree";
    case FormulaId::conjecture_chain: return "conjecture_chain";
    case FormulaId::conjecture_tree_cycle: return "conjecture_tree_cycle";
    case FormulaId::conjecture_complete_cycle: return "conjecture_complete_cycle";
  }
  return "?";
}

struct Prediction {
  FormulaId formula = FormulaId::tree;
  // Closed-form orbit length; empty when it scales with a winding number.
  std::optional<std::uint64_t> length;
  // Multiplier of the winding number for the cycle conjectures, else == length.
  std::uint64_t factor = 0;
  std::string assumptions;
};

inline std::uint64_t n_times_n_minus_1(std::size_t n) { return std::uint64_t{n} * (n - 1); }

inline Prediction predict(const SimpleGraph& g, const Composition& c) {
  using Shape = Composition::Shape;
  if (c.blocks.empty()) throw InvalidArgument("composition has no blocks");
  if (c.vertex_count() != g.vertex_count()) {
    throw InvalidArgument("composition covers " + std::to_string(c.vertex_count()) + " vertices, graph has " +
                          std::to_string(g.vertex_count()));
  }
  const std::size_t total = g.vertex_count();
  auto exact = [](FormulaId f, std::uint64_t len, std::string why) {
    return Prediction{f, len, len, std::move(why)};
  };

  switch (c.shape) {
    case Shape::single: {
      const Block b = c.blocks[0];
      if (b.kind == BlockKind::complete || (b.kind == BlockKind::tree && b.size == 1)) {
        return exact(FormulaId::complete, b.size, "complete graph on n vertices: length n");
      }
      if (b.kind == BlockKind::tree) return exact(FormulaId::tree, n_times_n_minus_1(b.size), "tree on m vertices: m(m-1)");
      if (b.size == 3) return exact(FormulaId::complete, 3, "the 3-cycle is K3");
      break;
    }
    case Shape::bridge_sum: {
      if (c.blocks.size() != 2) throw InvalidArgument("bridge sum needs exactly two blocks");
      const BlockKind a = c.blocks[0].kind;
      const BlockKind b = c.blocks[1].kind;
      const auto nn = n_times_n_minus_1(total);
      if (a == BlockKind::cycle || b == BlockKind::cycle) {
        const BlockKind other = a == BlockKind::cycle ? b : a;
        if (other == BlockKind::cycle) break;
        const auto id = other == BlockKind::tree ? FormulaId::conjecture_tree_cycle : FormulaId::conjecture_complete_cycle;
        return Prediction{id, std::nullopt, nn, "cycle bridged with " + to_string(other) + ": w(N-1)N conjectured"};
      }
      if (a == BlockKind::tree && b == BlockKind::tree) return exact(FormulaId::tree, nn, "tree bridged with tree is a tree");
      if (a == BlockKind::complete && b == BlockKind::complete) {
        return exact(FormulaId::complete_bridge_complete, nn, "complete bridged with complete: (n1+n2)(n1+n2-1)");
      }
      return exact(FormulaId::tree_bridge_complete, nn, "tree bridged with complete: (m+n)(m+n-1)");
    }
    case Shape::corona:
      if (c.blocks.size() != 2 || c.blocks[0].kind != BlockKind::complete || c.blocks[1].kind != BlockKind::tree) {
        break;
      }
      return exact(FormulaId::corona_complete_tree, n_times_n_minus_1(total), "corona of K_n with a tree on m: (nm+n)(nm+n-1)");
    case Shape::chain: {
      for (const auto& b : c.blocks) {
        if (b.kind == BlockKind::cycle) throw InvalidArgument("chain conjecture covers tree and complete blocks only");
      }
      if (c.blocks.size() == 1) return predict(g, Composition::single(c.blocks[0].kind, c.blocks[0].size));
      return exact(FormulaId::conjecture_chain, n_times_n_minus_1(total), "iterated bridge sum: N(N-1) conjectured");
    }
  }
  throw InvalidArgument("structure outside the covered families");
}

// Recognizes a tree, a complete graph, or a single bridge joining a tree or
// complete block to another tree or complete block. Chains are never
// guessed.
inline std::optional<Composition> detect_composition(const SimpleGraph& g) {
  const GraphClass cls = classify(g);
  if (!cls.is_connected) return std::nullopt;
  if (cls.is_complete) return Composition::single(BlockKind::complete, g.vertex_count());
  if (cls.is_tree) return Composition::single(BlockKind::tree, g.vertex_count());
  for (const Edge& bridge : cls.bridges) {
    std::vector<Edge> rest;
    for (const Edge& e : g.edges()) {
      if (!(e == bridge)) rest.push_back(e);
    }
    const auto parts = connected_components(SimpleGraph(g.vertex_count(), rest));
    if (parts.size() != 2) continue;
    std::vector<Block> blocks;
    for (const auto& part : parts) {
      const GraphClass pc = classify(induced_subgraph(g, part));
      if (pc.is_complete) {
        blocks.push_back({BlockKind::complete, part.size()});
      } else if (pc.is_tree) {
        blocks.push_back({BlockKind::tree, part.size()});
      }
    }
    if (blocks.size() == 2) return Composition::bridge(blocks[0], blocks[1]);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Family verification

inline std::string graph_id(const SimpleGraph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  mix(g.vertex_count());
  for (const Edge& e : g.edges()) {
    mix(e.u);
    mix(e.v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return "n" + std::to_string(g.vertex_count()) + "-" + buf;
}

struct StateRow {
  std::string graph_id;
  State state;
  std::uint64_t measured = 0;
  std::optional<std::uint64_t> predicted;
  bool match = false;
  std::uint64_t seed = 0;
};

struct FamilyReport {
  std::string graph_id;
  std::string description;
  Prediction prediction;
  EnumerationPlan::Mode mode = EnumerationPlan::Mode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t states_checked = 0;
  std::map<std::uint64_t, std::uint64_t> length_histogram;
  std::vector<StateRow> mismatches;
  std::vector<StateRow> rows;  // every checked state when requested

  bool passed() const { return mismatches.empty() && states_checked > 0; }
};

// Measures the orbit length of every state (exhaustive) or of seeded random
// states (sampled) and lists those that differ from the prediction.
inline FamilyReport verify_family(const SimpleGraph& g, const Prediction& prediction, const EnumerationPlan& plan,
                                  std::string description = {}, bool record_all = false) {
  if (!prediction.length) throw InvalidArgument("verify_family needs a closed-form prediction");
  const std::uint64_t expected = *prediction.length;
  FamilyReport rep;
  rep.graph_id = graph_id(g);
  rep.description = std::move(description);
  rep.prediction = prediction;
  rep.mode = plan.mode;
  rep.seed = plan.seed;
  const std::size_t n = g.vertex_count();

  auto record = [&](const State& s, std::uint64_t measured) {
    ++rep.states_checked;
    ++rep.length_histogram[measured];
    const bool ok = measured == expected;
    if (!ok || record_all) {
      StateRow row{rep.graph_id, s, measured, expected, ok, plan.seed};
      if (!ok) rep.mismatches.push_back(row);
      if (record_all) rep.rows.push_back(std::move(row));
    }
  };

  if (plan.mode == EnumerationPlan::Mode::exhaustive) {
    const auto table = orbit_length_table(g, plan);
    std::vector<Label> perm(n);
    std::iota(perm.begin(), perm.end(), Label{1});
    std::uint64_t idx = 0;
    do {
      const Labeling lab(perm);
      for (Label i = 1; i <= n; ++i, ++idx) record(State(lab, i), table[idx]);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return rep;
  }

  std::vector<State> samples = enumerate_states(n, plan);
  std::vector<std::uint64_t> lengths(samples.size(), 0);
  const std::size_t shards = std::max<std::size_t>(1, plan.partition);
  const std::uint64_t cap = plan.budget;
  StepBudget budget(plan.budget);
  run_shards(shards, plan.jobs, [&](std::size_t shard) {
    const std::size_t lo = samples.size() * shard / shards;
    const std::size_t hi = samples.size() * (shard + 1) / shards;
    for (std::size_t k = lo; k < hi; ++k) {
      lengths[k] = orbit_length(g, samples[k], cap).length;
      budget.charge(lengths[k]);
    }
  });
  if (budget.exhausted()) throw BudgetExceeded("sampled verification exceeded step budget");
  // deterministic merge: rows ordered by state encoding, then draw order
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = samples[a];
    const auto& sb = samples[b];
    if (sa.labeling.one_line() != sb.labeling.one_line()) return sa.labeling.one_line() < sb.labeling.one_line();
    return sa.active < sb.active;
  });
  for (std::size_t k : order) record(samples[k], lengths[k]);
  return rep;
}

// True when no state of g ever triggers a swap, i.e. every labeling stays
// constant along its orbit.
inline bool labeling_constant_on_orbits(const SimpleGraph& g, const EnumerationPlan& plan = EnumerationPlan::exhaustive()) {
  bool constant = true;
  for_each_state(g.vertex_count(), plan, [&](const State& s) {
    State t = s;
    if (advance(g, t)) constant = false;
  });
  return constant;
}

// TPro is a permutation of the state space: every state has exactly one
// preimage. Checked by counting images.
inline bool tpro_is_bijective(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  EnumerationPlan plan = EnumerationPlan::exhaustive();
  check_exhaustive(n, plan);
  std::vector<std::uint8_t> hits(factorial_times_n(n), 0);
  bool ok = true;
  for_each_state(n, plan, [&](const State& s) {
    const auto idx = state_index(tpro_step(g, s));
    if (hits[idx]++ != 0) ok = false;
  });
  return ok && std::all_of(hits.begin(), hits.end(), [](std::uint8_t h) { return h == 1; });
}

// One state per orbit: the first state of each orbit in enumeration order.
inline std::vector<State> orbit_representatives(const SimpleGraph& g, const EnumerationPlan& plan = EnumerationPlan::exhaustive()) {
  const std::size_t n = g.vertex_count();
  check_exhaustive(n, plan);
  std::vector<bool> seen(factorial_times_n(n), false);
  std::vector<State> reps;
  StepBudget budget(plan.budget);
  for_each_state(n, plan, [&](const State& start) {
    if (seen[state_index(start)]) return;
    reps.push_back(start);
    State s = start;
    std::uint64_t len = 0;
    do {
      seen[state_index(s)] = true;
      advance(g, s);
      ++len;
    } while (!(s == start));
    if (!budget.charge(len)) throw BudgetExceeded("orbit representatives exceeded step budget");
  });
  return reps;
}

// ---------------------------------------------------------------------------
// Attached blocks

// A block hanging off the rest of the graph by exactly one edge.
struct AttachedBlock {
  std::vector<Vertex> vertices;  // sorted
  BlockKind kind = BlockKind::tree;
  Vertex block_endpoint = 0;     // endpoint of the bridge inside the block
  Vertex outer_endpoint = 0;     // endpoint of the bridge outside the block
};

// Validates that `block` induces a tree or complete graph (per `want`, or
// either when empty) joined to its complement by a single edge.
inline AttachedBlock attached_block(const SimpleGraph& g, std::vector<Vertex> block,
                                    std::optional<BlockKind> want = std::nullopt) {
  std::sort(block.begin(), block.end());
  block.erase(std::unique(block.begin(), block.end()), block.end());
  if (block.empty() || block.size() >= g.vertex_count()) throw InvalidArgument("block must be a proper nonempty vertex subset");
  std::vector<bool> inside(g.vertex_count(), false);
  for (Vertex v : block) {
    if (v >= g.vertex_count()) throw InvalidArgument("block vertex out of range");
    inside[v] = true;
  }
  std::vector<Edge> crossing;
  for (const Edge& e : g.edges()) {
    if (inside[e.u] != inside[e.v]) crossing.push_back(e);
  }
  if (crossing.size() != 1) {
    throw InvalidArgument("block must be attached by exactly one edge, found " + std::to_string(crossing.size()));
  }
  const GraphClass cls = classify(induced_subgraph(g, block));
  AttachedBlock out;
  out.vertices = std::move(block);
  if (cls.is_complete && (!want || *want == BlockKind::complete)) {
    out.kind = BlockKind::complete;
  } else if (cls.is_tree && (!want || *want == BlockKind::tree)) {
    out.kind = BlockKind::tree;
  } else {
    throw InvalidArgument("block is not a " + (want ? to_string(*want) : std::string("tree or complete graph")));
  }
  const Edge b = crossing.front();
  out.block_endpoint = inside[b.u] ? b.u : b.v;
  out.outer_endpoint = inside[b.u] ? b.v : b.u;
  return out;
}

// Vertices on the `side` endpoint's side of the bridge {side, other}.
inline std::vector<Vertex> bridge_side(const SimpleGraph& g, Vertex side, Vertex other) {
  if (!g.adjacent(side, other)) throw InvalidArgument("bridge_side needs an edge");
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<Vertex> stack{side}, out;
  seen[side] = true;
  seen[other] = true;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  if (std::binary_search(out.begin(), out.end(), other)) throw InvalidArgument("edge is not a bridge");
  return out;
}

// ---------------------------------------------------------------------------
// Restriction independence

struct RestrictionViolation {
  std::vector<Label> restriction;  // labels on the fixed part, in vertex order
  Label active = 1;
  std::set<std::uint64_t> lengths;
};

struct RestrictionReport {
  BlockKind block_kind = BlockKind::tree;
  std::size_t block_size = 0;
  std::uint64_t classes_checked = 0;
  std::uint64_t states_checked = 0;
  std::vector<RestrictionViolation> violations;

  bool passed() const { return violations.empty() && classes_checked > 0; }
};

// Fixes labels `restriction` on `fixed_part` and the active label, then
// measures every extension to the attached block (or `trials` random ones
// when the block has more than `trials` extensions). All lengths must agree.
inline RestrictionReport verify_restriction_independence(const SimpleGraph& g, const std::vector<Vertex>& fixed_part,
                                                         const std::vector<Label>& restriction, Label active,
                                                         std::uint64_t trials = 5040,
                                                         std::uint64_t seed = kDefaultSeed) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> fixed(n, false);
  for (Vertex v : fixed_part) {
    if (v >= n) throw InvalidArgument("fixed vertex out of range");
    fixed[v] = true;
  }
  std::vector<Vertex> varied;
  for (Vertex v = 0; v < n; ++v) {
    if (!fixed[v]) varied.push_back(v);
  }
  const AttachedBlock block = attached_block(g, varied);
  if (restriction.size() != fixed_part.size()) throw InvalidArgument("restriction size mismatch");

  std::vector<bool> used(n + 1, false);
  for (Label l : restriction) {
    if (l < 1 || l > n || used[l]) throw InvalidArgument("restriction is not injective into 1..n");
    used[l] = true;
  }
  std::vector<Label> free_labels;
  for (Label l = 1; l <= n; ++l) {
    if (!used[l]) free_labels.push_back(l);
  }

  RestrictionReport rep;
  rep.block_kind = block.kind;
  rep.block_size = varied.size();
  RestrictionViolation seen{restriction, active, {}};
  auto measure = [&](const std::vector<Label>& ext) {
    std::vector<Label> labels(n);
    for (std::size_t k = 0; k < fixed_part.size(); ++k) labels[fixed_part[k]] = restriction[k];
    for (std::size_t k = 0; k < varied.size(); ++k) labels[varied[k]] = ext[k];
    seen.lengths.insert(orbit_length(g, State(Labeling(labels), active), factorial_times_n(std::min<std::size_t>(n, 20)) + 1).length);
    ++rep.states_checked;
  };
  if (factorial(varied.size()) <= trials) {
    std::vector<Label> ext = free_labels;
    do measure(ext);
    while (std::next_permutation(ext.begin(), ext.end()));
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
      std::vector<Label> ext = free_labels;
      std::shuffle(ext.begin(), ext.end(), rng);
      measure(ext);
    }
  }
  rep.classes_checked = 1;
  if (seen.lengths.size() != 1) rep.violations.push_back(std::move(seen));
  return rep;
}

// Every (restriction, active) class at once, from the full orbit table.
inline RestrictionReport verify_restriction_independence_exhaustive(const SimpleGraph& g,
                                                                    const std::vector<Vertex>& fixed_part,
                                                                    const EnumerationPlan& plan = EnumerationPlan::exhaustive()) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> fixed(n, false);
  for (Vertex v : fixed_part) fixed.at(v) = true;
  std::vector<Vertex> varied;
  for (Vertex v = 0; v < n; ++v) {
    if (!fixed[v]) varied.push_back(v);
  }
  const AttachedBlock block = attached_block(g, varied);
  const auto table = orbit_length_table(g, plan);

  RestrictionReport rep;
  rep.block_kind = block.kind;
  rep.block_size = varied.size();
  // key: labels on the fixed part (4 bits each, n <= 9) then the active label
  std::unordered_map<std::uint64_t, std::set<std::uint64_t>> classes;
  std::vector<Label> perm(n);
  std::iota(perm.begin(), perm.end(), Label{1});
  std::uint64_t idx = 0;
  do {
    std::uint64_t key = 0;
    for (Vertex v : fixed_part) key = (key << 4) | perm[v];
    for (Label i = 1; i <= n; ++i, ++idx) {
      classes[(key << 4) | i].insert(table[idx]);
      ++rep.states_checked;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  rep.classes_checked = classes.size();

  std::vector<std::uint64_t> keys;
  for (const auto& [key, lengths] : classes) {
    if (lengths.size() != 1) keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  for (std::uint64_t key : keys) {
    RestrictionViolation v;
    v.active = static_cast<Label>(key & 0xF);
    std::uint64_t rest = key >> 4;
    v.restriction.assign(fixed_part.size(), 0);
    for (std::size_t k = fixed_part.size(); k-- > 0;) {
      v.restriction[k] = static_cast<Label>(rest & 0xF);
      rest >>= 4;
    }
    v.lengths = classes[key];
    rep.violations.push_back(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Crossing instrumentation

// Replays `horizon` steps from s and records each step at which the coin
// traverses the edge {a, b}.
inline std::vector<CrossingEvent> crossing_log(const SimpleGraph& g, const State& s, Edge edge, std::uint64_t horizon) {
  check_state_for(g, s);
  if (!g.has_edge(edge)) throw InvalidArgument("monitored edge is not in the graph");
  std::vector<CrossingEvent> events;
  State cur = s;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    const Vertex before = cur.coin();
    advance(g, cur);
    const Vertex after = cur.coin();
    if (before != after && Edge(before, after) == edge) events.push_back({t, before, after});
  }
  return events;
}

enum class SideKind { tree, complete };

inline std::string to_string(SideKind k) { return k == SideKind::tree ? "tree" : "complete"; }

struct ExcursionCheck {
  std::uint64_t inbound_time = 0;   // coin moves outer -> block endpoint
  std::uint64_t outbound_time = 0;  // first later move block endpoint -> outer
  bool gap_ok = false;
  std::optional<std::size_t> rotation;
  bool rotation_ok = false;
  bool dwell_ok = true;  // tree side: N-1 steps on every block vertex
  bool pairs_ok = true;  // tree side: each (block replica on stone, replica ahead) pair exactly once

  bool ok() const { return gap_ok && rotation_ok && dwell_ok && pairs_ok; }
};

struct LemmaReport {
  SideKind side = SideKind::tree;
  std::size_t side_size = 0;
  std::size_t other_size = 0;
  std::uint64_t expected_gap = 0;
  std::uint64_t orbit_length = 0;
  std::vector<ExcursionCheck> excursions;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(excursions.begin(), excursions.end(),
                                                  [](const ExcursionCheck& c) { return !c.ok(); }));
  }
  bool passed() const { return failures() == 0; }
};

// Replays the orbit of s and checks every excursion of the coin across the
// bridge {outer, block_endpoint} into a tree (resp. complete) side of size
// m: the coin returns exactly m(N-1) steps later, and the diagram right
// after the return equals the diagram of (swap the two endpoint labels of
// sigma_t, i_t + 1) rotated clockwise by the size of the other side.
inline LemmaReport verify_lemma_sd_rotation(const SimpleGraph& g, const State& s, Edge bridge, Vertex block_endpoint,
                                            SideKind side, std::optional<std::uint64_t> cap = std::nullopt) {
  check_state_for(g, s);
  if (!g.has_edge(bridge)) throw InvalidArgument("bridge is not an edge");
  if (block_endpoint != bridge.u && block_endpoint != bridge.v) throw InvalidArgument("block endpoint not on bridge");
  const Vertex outer = block_endpoint == bridge.u ? bridge.v : bridge.u;
  const auto side_vertices = bridge_side(g, block_endpoint, outer);
  const GraphClass side_class = classify(induced_subgraph(g, side_vertices));
  if ((side == SideKind::tree && !side_class.is_tree) || (side == SideKind::complete && !side_class.is_complete)) {
    throw InvalidArgument("side is not a " + to_string(side));
  }

  const std::size_t total = g.vertex_count();
  LemmaReport rep;
  rep.side = side;
  rep.side_size = side_vertices.size();
  rep.other_size = total - side_vertices.size();
  rep.expected_gap = std::uint64_t{rep.side_size} * (total - 1);

  const auto orbit = orbit_states(g, s, cap);
  const std::uint64_t length = orbit.size();
  rep.orbit_length = length;
  auto at = [&](std::uint64_t t) -> const State& { return orbit[t % length]; };
  std::vector<bool> in_side(total, false);
  for (Vertex v : side_vertices) in_side[v] = true;

  for (std::uint64_t t = 0; t < length; ++t) {
    if (at(t).coin() != outer || at(t + 1).coin() != block_endpoint) continue;
    ExcursionCheck chk;
    chk.inbound_time = t;
    std::uint64_t out = t + 1;
    const std::uint64_t limit = t + 1 + length;
    while (out < limit && !(at(out).coin() == block_endpoint && at(out + 1).coin() == outer)) ++out;
    chk.outbound_time = out;
    chk.gap_ok = out < limit && out - t == rep.expected_gap;

    const State& st = at(t);
    State swapped = st;
    swapped.labeling.swap_labels(st.labeling.label_of(outer), st.labeling.label_of(block_endpoint));
    swapped.active = next_label(st.active, total);
    chk.rotation = is_cyclic_rotation(from_state(swapped), from_state(at(out + 1)));
    chk.rotation_ok = chk.rotation && *chk.rotation == rep.other_size % total;

    if (side == SideKind::tree && chk.gap_ok) {
      std::vector<std::uint64_t> dwell(total, 0);
      std::map<std::pair<Vertex, Vertex>, std::uint64_t> pairs;
      for (std::uint64_t tau = t + 1; tau <= out; ++tau) {
        const State& cur = at(tau);
        const Vertex on_stone = cur.coin();
        ++dwell[on_stone];
        if (in_side[on_stone]) ++pairs[{on_stone, cur.labeling.vertex_of(next_label(cur.active, total))}];
      }
      for (Vertex v = 0; v < total; ++v) {
        if (dwell[v] != (in_side[v] ? total - 1 : 0)) chk.dwell_ok = false;
      }
      chk.pairs_ok = pairs.size() == side_vertices.size() * (total - 1) &&
                     std::all_of(pairs.begin(), pairs.end(), [](const auto& kv) { return kv.second == 1; });
    }
    rep.excursions.push_back(chk);
  }
  return rep;
}

struct DirectionalReport {
  std::uint64_t steps_checked = 0;
  std::uint64_t steps_in_block = 0;
  std::uint64_t swaps_in_block = 0;
  std::vector<std::uint64_t> violation_times;

  bool passed() const { return violation_times.empty(); }
};

// While the coin is inside a complete block, replicas of block vertices may
// only move clockwise and all other replicas only counterclockwise. A swap
// moves the riding replica one position clockwise and the faced replica one
// position counterclockwise; nothing else moves.
inline DirectionalReport verify_directional(const SimpleGraph& g, const State& s, const std::vector<Vertex>& block,
                                           std::uint64_t horizon) {
  check_state_for(g, s);
  if (block.empty()) throw InvalidArgument("empty block");
  if (!classify(induced_subgraph(g, block)).is_complete) throw InvalidArgument("block is not complete");
  std::vector<bool> inside(g.vertex_count(), false);
  for (Vertex v : block) inside.at(v) = true;
  for (const Edge& e : g.edges()) {
    if (inside[e.u] != inside[e.v]) {
      const Vertex a = inside[e.u] ? e.u : e.v;
      bridge_side(g, a, a == e.u ? e.v : e.u);  // throws unless e is a bridge
    }
  }

  DirectionalReport rep;
  State cur = s;
  const std::size_t n = g.vertex_count();
  for (std::uint64_t t = 0; t < horizon; ++t) {
    ++rep.steps_checked;
    const Vertex rider = cur.coin();
    const Vertex faced = cur.labeling.vertex_of(next_label(cur.active, n));
    const bool swapped = advance(g, cur);
    if (!inside[rider]) continue;
    ++rep.steps_in_block;
    if (!swapped) continue;
    ++rep.swaps_in_block;
    if (!inside[rider] || inside[faced]) rep.violation_times.push_back(t);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Winding number for a cycle bridged with a tree or complete block

struct WindingInput {
  SimpleGraph graph;
  std::vector<Vertex> cycle_order;  // cycle vertices in cycle order, starting at the bridge endpoint
  std::vector<Vertex> other_block;
  BlockKind other_kind = BlockKind::tree;
  Vertex cycle_endpoint = 0;
  Vertex other_endpoint = 0;
};

// other_block(other_junction) bridged with cycle(nu)(cycle_junction); the
// other block takes vertices [0, size), the cycle the rest.
inline WindingInput make_cycle_bridge(const SimpleGraph& other, BlockKind other_kind, std::size_t nu,
                                      Vertex other_junction = 0, Vertex cycle_junction = 0) {
  if (other_kind == BlockKind::cycle) throw InvalidArgument("the attached block must be a tree or complete graph");
  const GraphClass cls = classify(other);
  if ((other_kind == BlockKind::tree && !cls.is_tree) || (other_kind == BlockKind::complete && !cls.is_complete)) {
    throw InvalidArgument("attached block does not match its declared kind");
  }
  WindingInput in;
  in.graph = bridge_sum(other, other_junction, build(GraphFamilySpec::cycle(nu)), cycle_junction);
  const auto offset = static_cast<Vertex>(other.vertex_count());
  for (Vertex k = 0; k < nu; ++k) in.cycle_order.push_back(offset + static_cast<Vertex>((cycle_junction + k) % nu));
  for (Vertex v = 0; v < offset; ++v) in.other_block.push_back(v);
  in.other_kind = other_kind;
  in.cycle_endpoint = offset + cycle_junction;
  in.other_endpoint = other_junction;
  return in;
}

enum class WindingInterpretation { literal, inferred };

inline std::string to_string(WindingInterpretation w) {
  return w == WindingInterpretation::literal ? "literal" : "inferred";
}

inline constexpr const char* kLiteralWindingReading =
    "omega = cycle vertices in cycle order starting at the cycle-side bridge endpoint; "
    "R_k = 1 + number of non-cycle replicas passed walking clockwise in SD_t from omega(k) to omega(k+1 mod nu); "
    "w = sum_k R_k / (N-1); t = first step from the given state at which the coin crosses the bridge from the "
    "cycle side to the other block";

inline constexpr const char* kInferredWindingReading = "w = orbit length / (N(N-1))";

struct WindingValue {
  WindingInterpretation interpretation = WindingInterpretation::inferred;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  bool defined = false;  // literal: a crossing exists on the orbit
  std::optional<std::uint64_t> crossing_time;
  // Literal only: total clockwise distance around the cycle's vertex loop
  // in SD_t divided by N.
  std::uint64_t cycle_winding = 0;
  std::string reading;

  bool integral() const { return defined && numerator % denominator == 0; }
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

inline WindingValue winding_number(const WindingInput& in, const State& s, WindingInterpretation interp,
                                   std::optional<std::uint64_t> cap = std::nullopt) {
  const SimpleGraph& g = in.graph;
  check_state_for(g, s);
  if (!g.adjacent(in.cycle_endpoint, in.other_endpoint)) throw InvalidArgument("winding input bridge is not an edge");
  if (in.cycle_order.size() + in.other_block.size() != g.vertex_count()) {
    throw InvalidArgument("winding input blocks do not cover the graph");
  }
  const std::size_t total = g.vertex_count();
  WindingValue out;
  out.interpretation = interp;

  if (interp == WindingInterpretation::inferred) {
    out.reading = kInferredWindingReading;
    out.numerator = orbit_length(g, s, cap).length;
    out.denominator = n_times_n_minus_1(total);
    out.defined = out.denominator > 0;
    return out;
  }

  out.reading = kLiteralWindingReading;
  out.denominator = total - 1;
  const auto orbit = orbit_states(g, s, cap);
  const std::uint64_t length = orbit.size();
  std::optional<std::uint64_t> t;
  for (std::uint64_t k = 0; k < length; ++k) {
    if (orbit[k].coin() == in.cycle_endpoint && orbit[(k + 1) % length].coin() == in.other_endpoint) {
      t = k;
      break;
    }
  }
  if (!t) return out;
  out.defined = true;
  out.crossing_time = t;
  const Labeling& sigma = orbit[*t].labeling;
  std::vector<bool> on_cycle(total, false);
  for (Vertex v : in.cycle_order) on_cycle[v] = true;
  const std::size_t nu = in.cycle_order.size();
  std::uint64_t sum_r = 0;
  std::uint64_t distance = 0;
  for (std::size_t k = 0; k < nu; ++k) {
    const Label from = sigma.label_of(in.cycle_order[k]);
    const Label to = sigma.label_of(in.cycle_order[(k + 1) % nu]);
    std::uint64_t crossed = 0;
    Label p = next_label(from, total);
    std::uint64_t steps = 1;
    while (p != to) {
      if (!on_cycle[sigma.vertex_of(p)]) ++crossed;
      p = next_label(p, total);
      ++steps;
    }
    sum_r += 1 + crossed;
    distance += steps;
  }
  out.numerator = sum_r;
  out.cycle_winding = distance / total;
  return out;
}

// ---------------------------------------------------------------------------
// Conjecture exploration. Evidence only: nothing here asserts a conjecture.

struct ChainExploration {
  std::string graph_id;
  std::size_t vertex_count = 0;
  std::uint64_t predicted = 0;
  OrbitCensus census;
  std::vector<StateRow> counterexamples;  // first few, in state order
  std::uint64_t counterexample_count = 0;
};

inline ChainExploration explore_chain(const SimpleGraph& g, const EnumerationPlan& plan,
                                      std::size_t max_counterexamples = 20) {
  ChainExploration out;
  out.graph_id = graph_id(g);
  out.vertex_count = g.vertex_count();
  out.predicted = n_times_n_minus_1(g.vertex_count());
  out.census = census(g, plan);
  Prediction pred{FormulaId::conjecture_chain, out.predicted, out.predicted, "iterated bridge sum: N(N-1)"};
  const FamilyReport rep = verify_family(g, pred, plan);
  out.counterexample_count = rep.mismatches.size();
  for (std::size_t k = 0; k < rep.mismatches.size() && k < max_counterexamples; ++k) {
    out.counterexamples.push_back(rep.mismatches[k]);
  }
  return out;
}

struct WindingRow {
  State state;
  std::uint64_t measured = 0;
  WindingValue inferred;
  WindingValue literal;
  // literal and inferred agree as rationals
  bool match = false;
};

struct CycleExploration {
  std::string graph_id;
  BlockKind other_kind = BlockKind::tree;
  std::size_t other_size = 0;
  std::size_t cycle_size = 0;
  std::uint64_t factor = 0;  // (N-1)N
  EnumerationPlan::Mode mode = EnumerationPlan::Mode::exhaustive;
  std::uint64_t seed = 0;
  std::vector<WindingRow> rows;

  double agreement_rate() const {
    if (rows.empty()) return 0.0;
    const auto hits = std::count_if(rows.begin(), rows.end(), [](const WindingRow& r) { return r.match; });
    return static_cast<double>(hits) / static_cast<double>(rows.size());
  }
};

inline CycleExploration explore_cycle_bridge(const WindingInput& in, const EnumerationPlan& plan) {
  CycleExploration out;
  out.graph_id = graph_id(in.graph);
  out.other_kind = in.other_kind;
  out.other_size = in.other_block.size();
  out.cycle_size = in.cycle_order.size();
  out.factor = n_times_n_minus_1(in.graph.vertex_count());
  out.mode = plan.mode;
  out.seed = plan.seed;
  const std::size_t n = in.graph.vertex_count();
  const std::optional<std::uint64_t> cap =
      n > 10 ? std::optional<std::uint64_t>(plan.budget) : std::nullopt;
  std::vector<State> states = enumerate_states(n, plan);
  out.rows.resize(states.size());
  StepBudget budget(plan.budget);
  const std::size_t shards = std::max<std::size_t>(1, plan.partition);
  run_shards(shards, plan.jobs, [&](std::size_t shard) {
    const std::size_t lo = states.size() * shard / shards;
    const std::size_t hi = states.size() * (shard + 1) / shards;
    for (std::size_t k = lo; k < hi; ++k) {
      WindingRow& row = out.rows[k];
      row.state = states[k];
      row.inferred = winding_number(in, states[k], WindingInterpretation::inferred, cap);
      row.literal = winding_number(in, states[k], WindingInterpretation::literal, cap);
      row.measured = row.inferred.numerator;
      row.match = row.literal.defined &&
                  row.literal.numerator * row.inferred.denominator == row.inferred.numerator * row.literal.denominator;
      budget.charge(2 * row.measured);
    }
  });
  if (budget.exhausted()) throw BudgetExceeded("cycle exploration exceeded step budget");
  return out;
}

}  // namespace tpro
