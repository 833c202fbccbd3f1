#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tpro/error.hpp"

namespace tpro {

using Vertex = std::uint32_t;

// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

// Undirected simple graph on vertices 0..n-1. Immutable after construction.
//
// Adjacency is answered from bitset rows when n <= 64 and from a hashed edge
// set otherwise; the step rule asks one adjacency question per step.
class SimpleGraph {
 public:
  static constexpr std::size_t kDenseLimit = 64;

  SimpleGraph() : SimpleGraph(1, {}) {}

  SimpleGraph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
    if (n_ == 0) throw InvalidArgument("graph must have at least one vertex");
    if (n_ > std::numeric_limits<Vertex>::max()) throw InvalidArgument("graph too large");
    for (const Edge& e : edges) {
      if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
      if (e.v >= n_) {
        throw InvalidArgument("edge endpoint " + std::to_string(e.v) + " out of range for " +
                              std::to_string(n_) + " vertices");
      }
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
      throw InvalidArgument("duplicate edge {" + std::to_string(dup->u) + "," +
                            std::to_string(dup->v) + "}");
    }
    edges_ = std::move(edges);

    neighbors_.assign(n_, {});
    for (const Edge& e : edges_) {
      neighbors_[e.u].push_back(e.v);
      neighbors_[e.v].push_back(e.u);
    }
    for (auto& row : neighbors_) std::sort(row.begin(), row.end());

    if (n_ <= kDenseLimit) {
      rows_.assign(n_, 0);
      for (const Edge& e : edges_) {
        rows_[e.u] |= std::uint64_t{1} << e.v;
        rows_[e.v] |= std::uint64_t{1} << e.u;
      }
    } else {
      keys_.reserve(edges_.size() * 2);
      for (const Edge& e : edges_) keys_.insert(key(e.u, e.v));
    }
  }

  static SimpleGraph from_pairs(std::size_t vertex_count,
                                const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) edges.emplace_back(a, b);
    return SimpleGraph(vertex_count, std::move(edges));
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_.at(v); }
  std::size_t degree(Vertex v) const { return neighbors_.at(v).size(); }

  bool adjacent(Vertex a, Vertex b) const {
    if (!rows_.empty()) return (rows_[a] >> b) & 1U;
    if (a == b) return false;
    return keys_.contains(key(std::min(a, b), std::max(a, b)));
  }

  bool has_edge(const Edge& e) const { return e.v < n_ && adjacent(e.u, e.v); }

  // Identical vertex count and identical edge set; not isomorphism.
  bool operator==(const SimpleGraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  static std::uint64_t key(Vertex a, Vertex b) { return (std::uint64_t{a} << 32) | b; }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::uint64_t> rows_;
  std::unordered_set<std::uint64_t> keys_;
};

// ---------------------------------------------------------------------------
// Families

struct GraphFamilySpec {
  enum class Kind { path, star, complete, cycle, tree_from_pruefer, explicit_edges };

  Kind kind = Kind::path;
  std::size_t size = 1;
  std::vector<Vertex> pruefer;
  std::vector<Edge> edges;

  static GraphFamilySpec path(std::size_t m) { return {Kind::path, m, {}, {}}; }
  static GraphFamilySpec star(std::size_t m) { return {Kind::star, m, {}, {}}; }
  static GraphFamilySpec complete(std::size_t n) { return {Kind::complete, n, {}, {}}; }
  static GraphFamilySpec cycle(std::size_t n) { return {Kind::cycle, n, {}, {}}; }
  static GraphFamilySpec tree(std::vector<Vertex> seq) {
    const std::size_t m = seq.size() + 2;
    return {Kind::tree_from_pruefer, m, std::move(seq), {}};
  }
  static GraphFamilySpec tree(std::size_t m, std::vector<Vertex> seq) {
    return {Kind::tree_from_pruefer, m, std::move(seq), {}};
  }
  static GraphFamilySpec explicit_graph(std::size_t n, std::vector<Edge> edges) {
    return {Kind::explicit_edges, n, {}, std::move(edges)};
  }
};

// Standard Pruefer decoding. A sequence of length m-2 over [0, m) names a
// labeled tree on m vertices; m = 1 and m = 2 take the empty sequence.
inline SimpleGraph tree_from_pruefer(std::size_t m, const std::vector<Vertex>& seq) {
  if (m == 0) throw InvalidArgument("tree needs at least one vertex");
  if ((m <= 2 && !seq.empty()) || (m > 2 && seq.size() != m - 2)) {
    throw InvalidArgument("Pruefer sequence of length " + std::to_string(seq.size()) +
                          " does not describe a tree on " + std::to_string(m) + " vertices");
  }
  for (Vertex x : seq) {
    if (x >= m) throw InvalidArgument("Pruefer entry " + std::to_string(x) + " out of range");
  }
  if (m == 1) return SimpleGraph(1, {});
  if (m == 2) return SimpleGraph(2, {Edge(0, 1)});

  std::vector<std::size_t> degree(m, 1);
  for (Vertex x : seq) ++degree[x];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < m; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Edge> edges;
  edges.reserve(m - 1);
  for (Vertex x : seq) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1) leaves.push(x);
  }
  const Vertex a = leaves.top();
  leaves.pop();
  edges.emplace_back(a, leaves.top());
  return SimpleGraph(m, std::move(edges));
}

// Inverse of tree_from_pruefer. Requires a tree.
inline std::vector<Vertex> pruefer_encode(const SimpleGraph& tree) {
  const std::size_t m = tree.vertex_count();
  if (tree.edge_count() + 1 != m) throw InvalidArgument("pruefer_encode needs a tree");
  if (m <= 2) return {};
  std::vector<std::size_t> degree(m);
  for (Vertex v = 0; v < m; ++v) degree[v] = tree.degree(v);
  std::vector<bool> removed(m, false);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < m; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Vertex> seq;
  seq.reserve(m - 2);
  while (seq.size() < m - 2) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    removed[leaf] = true;
    for (Vertex w : tree.neighbors(leaf)) {
      if (removed[w]) continue;
      seq.push_back(w);
      if (--degree[w] == 1) leaves.push(w);
    }
  }
  return seq;
}

// Every Pruefer sequence for m vertices, in lexicographic order (m^(m-2) of them).
inline std::vector<std::vector<Vertex>> all_pruefer_sequences(std::size_t m) {
  if (m <= 2) return {{}};
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> seq(m - 2, 0);
  while (true) {
    out.push_back(seq);
    std::size_t pos = seq.size();
    while (pos > 0 && seq[pos - 1] + 1 == m) seq[--pos] = 0;
    if (pos == 0) break;
    ++seq[pos - 1];
  }
  return out;
}

inline SimpleGraph build(const GraphFamilySpec& spec) {
  using Kind = GraphFamilySpec::Kind;
  const std::size_t n = spec.size;
  if (n == 0) throw InvalidArgument("graph size must be at least 1");
  std::vector<Edge> edges;
  switch (spec.kind) {
    case Kind::path:
      for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      break;
    case Kind::star:
      for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
      break;
    case Kind::complete:
      for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
      }
      break;
    case Kind::cycle:
      if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
      for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
      break;
    case Kind::tree_from_pruefer:
      return tree_from_pruefer(n, spec.pruefer);
    case Kind::explicit_edges:
      edges = spec.edges;
      break;
  }
  return SimpleGraph(n, std::move(edges));
}

// AHU canonical string of the tree rooted at `root`.
inline std::string rooted_tree_code(const SimpleGraph& tree, Vertex root) {
  std::function<std::string(Vertex, Vertex)> code = [&](Vertex v, Vertex parent) {
    std::vector<std::string> kids;
    for (Vertex w : tree.neighbors(v)) {
      if (w != parent) kids.push_back(code(w, v));
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& k : kids) out += k;
    return out + ")";
  };
  return code(root, root);
}

// One labeled tree per isomorphism class of rooted trees on m vertices,
// with its root; first representative in Pruefer order wins.
inline std::vector<std::pair<SimpleGraph, Vertex>> rooted_tree_representatives(std::size_t m) {
  std::vector<std::pair<SimpleGraph, Vertex>> out;
  std::set<std::string> seen;
  for (const auto& seq : all_pruefer_sequences(m)) {
    const SimpleGraph t = tree_from_pruefer(m, seq);
    for (Vertex r = 0; r < m; ++r) {
      if (seen.insert(rooted_tree_code(t, r)).second) out.emplace_back(t, r);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composition

// Disjoint union plus the edge {v1, v2'}, where g2's vertex x becomes
// x + |V1|.
inline SimpleGraph bridge_sum(const SimpleGraph& g1, Vertex v1, const SimpleGraph& g2, Vertex v2) {
  if (v1 >= g1.vertex_count() || v2 >= g2.vertex_count()) {
    throw InvalidArgument("bridge_sum junction vertex out of range");
  }
  const auto offset = static_cast<Vertex>(g1.vertex_count());
  std::vector<Edge> edges = g1.edges();
  edges.reserve(g1.edge_count() + g2.edge_count() + 1);
  for (const Edge& e : g2.edges()) edges.emplace_back(e.u + offset, e.v + offset);
  edges.emplace_back(v1, v2 + offset);
  return SimpleGraph(g1.vertex_count() + g2.vertex_count(), std::move(edges));
}

// One copy of g2 per vertex of g1. Copy i occupies [|V1| + i|V2|, |V1| + (i+1)|V2|)
// and its copy of `attach` is joined to vertex i of g1.
inline SimpleGraph corona_product(const SimpleGraph& g1, const SimpleGraph& g2, Vertex attach) {
  if (attach >= g2.vertex_count()) throw InvalidArgument("corona attach vertex out of range");
  const std::size_t n1 = g1.vertex_count();
  const std::size_t n2 = g2.vertex_count();
  std::vector<Edge> edges = g1.edges();
  edges.reserve(g1.edge_count() + n1 * (g2.edge_count() + 1));
  for (Vertex i = 0; i < n1; ++i) {
    const auto offset = static_cast<Vertex>(n1 + i * n2);
    for (const Edge& e : g2.edges()) edges.emplace_back(e.u + offset, e.v + offset);
    edges.emplace_back(i, attach + offset);
  }
  return SimpleGraph(n1 + n1 * n2, std::move(edges));
}

struct BridgeChainSpec {
  std::vector<GraphFamilySpec> blocks;
  // junctions[k] = (vertex in block k, vertex in block k+1), block-local indices.
  std::vector<std::pair<Vertex, Vertex>> junctions;
};

// Left fold of bridge_sum. Block k's vertices land at offset sum_{j<k} n_j.
inline SimpleGraph build_chain(const std::vector<SimpleGraph>& blocks,
                               const std::vector<std::pair<Vertex, Vertex>>& junctions) {
  if (blocks.empty()) throw InvalidArgument("chain needs at least one block");
  if (junctions.size() + 1 != blocks.size()) {
    throw InvalidArgument("chain with " + std::to_string(blocks.size()) + " blocks needs " +
                          std::to_string(blocks.size() - 1) + " junctions");
  }
  SimpleGraph acc = blocks.front();
  std::size_t prev_offset = 0;
  for (std::size_t k = 0; k < junctions.size(); ++k) {
    const auto [left, right] = junctions[k];
    if (left >= blocks[k].vertex_count()) throw InvalidArgument("chain junction out of range");
    const std::size_t offset = acc.vertex_count();
    acc = bridge_sum(acc, static_cast<Vertex>(prev_offset + left), blocks[k + 1], right);
    prev_offset = offset;
  }
  return acc;
}

inline SimpleGraph build_chain(const BridgeChainSpec& spec) {
  std::vector<SimpleGraph> blocks;
  blocks.reserve(spec.blocks.size());
  for (const auto& b : spec.blocks) blocks.push_back(build(b));
  auto junctions = spec.junctions;
  if (junctions.empty() && blocks.size() > 1) junctions.assign(blocks.size() - 1, {0, 0});
  return build_chain(blocks, junctions);
}

// ---------------------------------------------------------------------------
// Structure queries

inline std::vector<std::vector<Vertex>> connected_components(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

// Bridges by the lowlink method (iterative DFS), sorted.
inline std::vector<Edge> find_bridges(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> disc(n, kUnseen), low(n, 0);
  std::vector<Edge> bridges;
  std::size_t timer = 0;

  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] != kUnseen) continue;
    std::vector<Frame> stack{{root, root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = g.neighbors(f.v);
      if (f.next < nbrs.size()) {
        const Vertex w = nbrs[f.next++];
        if (w == f.parent && f.v != root) continue;  // simple graph: one parent edge
        if (disc[w] == kUnseen) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& up = stack.back();
          low[up.v] = std::min(low[up.v], low[done.v]);
          if (low[done.v] > disc[up.v]) bridges.emplace_back(up.v, done.v);
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

struct GraphClass {
  bool is_tree = false;
  bool is_complete = false;
  bool is_connected = false;
  std::vector<Edge> bridges;
};

inline GraphClass classify(const SimpleGraph& g) {
  GraphClass c;
  const std::size_t n = g.vertex_count();
  c.is_connected = connected_components(g).size() == 1;
  c.is_tree = c.is_connected && g.edge_count() + 1 == n;
  c.is_complete = g.edge_count() == n * (n - 1) / 2;
  c.bridges = find_bridges(g);
  return c;
}

// Single-source BFS distances; unreachable vertices get SIZE_MAX.
inline std::vector<std::size_t> bfs_distances(const SimpleGraph& g, Vertex source) {
  std::vector<std::size_t> dist(g.vertex_count(), std::numeric_limits<std::size_t>::max());
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == std::numeric_limits<std::size_t>::max()) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

// |{x : d(x, l') < d(x, l)}| for an edge {l, l'}.
inline std::size_t eta(const SimpleGraph& g, Vertex l, Vertex l_prime) {
  if (l >= g.vertex_count() || l_prime >= g.vertex_count() || !g.adjacent(l, l_prime)) {
    throw InvalidArgument("eta needs an edge");
  }
  const auto from_l = bfs_distances(g, l);
  const auto from_lp = bfs_distances(g, l_prime);
  std::size_t count = 0;
  for (std::size_t x = 0; x < g.vertex_count(); ++x) {
    if (from_lp[x] < from_l[x]) ++count;
  }
  return count;
}

// Subgraph induced on `vertices`; vertex k of the result is vertices[k].
inline SimpleGraph induced_subgraph(const SimpleGraph& g, const std::vector<Vertex>& vertices) {
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (g.adjacent(vertices[a], vertices[b])) {
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
      }
    }
  }
  return SimpleGraph(vertices.size(), std::move(edges));
}

// Image of g under the vertex permutation v -> perm[v].
inline SimpleGraph relabel(const SimpleGraph& g, const std::vector<Vertex>& perm) {
  if (perm.size() != g.vertex_count()) throw InvalidArgument("relabel permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.emplace_back(perm.at(e.u), perm.at(e.v));
  return SimpleGraph(g.vertex_count(), std::move(edges));
}

}  // namespace tpro
