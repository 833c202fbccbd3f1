#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "tpro/graph.hpp"
#include "tpro/graph_source.hpp"

using namespace tpro;

namespace {

// Textbook decoding: repeatedly join the smallest leaf to the next entry.
std::set<Edge> naive_pruefer_decode(std::size_t m, std::vector<Vertex> seq) {
  std::set<Edge> edges;
  std::vector<Vertex> alive(m);
  for (Vertex v = 0; v < m; ++v) alive[v] = v;
  while (!seq.empty()) {
    for (Vertex leaf : alive) {
      if (std::find(seq.begin(), seq.end(), leaf) == seq.end()) {
        edges.insert(Edge(leaf, seq.front()));
        alive.erase(std::find(alive.begin(), alive.end(), leaf));
        seq.erase(seq.begin());
        break;
      }
    }
  }
  if (alive.size() == 2) edges.insert(Edge(alive[0], alive[1]));
  return edges;
}

bool connected_without(const SimpleGraph& g, std::size_t skip) {
  std::vector<Edge> rest;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    if (k != skip) rest.push_back(g.edges()[k]);
  }
  return connected_components(SimpleGraph(g.vertex_count(), rest)).size() == 1;
}

std::vector<std::vector<std::size_t>> floyd_warshall(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t inf = 1000;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

SimpleGraph random_connected(std::size_t n, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(std::uniform_int_distribution<Vertex>(0, v - 1)(rng), v);
  std::bernoulli_distribution extra(0.3);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (extra(rng) && std::find(edges.begin(), edges.end(), Edge(a, b)) == edges.end()) edges.emplace_back(a, b);
  return SimpleGraph(n, edges);
}

}  // namespace

TEST(SimpleGraph, RejectsLoopsDuplicatesAndRange) {
  EXPECT_THROW(SimpleGraph(3, {{1, 1}}), InvalidArgument);
  EXPECT_THROW(SimpleGraph(3, {{0, 1}, {1, 0}}), InvalidArgument);
  EXPECT_THROW(SimpleGraph(3, {{0, 3}}), InvalidArgument);
}

TEST(SimpleGraph, AdjacencyIsSymmetricInBothRepresentations) {
  for (std::size_t n : {5u, 70u}) {
    const SimpleGraph g = build(GraphFamilySpec::cycle(n));
    EXPECT_EQ(g.edge_count(), n);
    for (Vertex v = 0; v < n; ++v) {
      EXPECT_TRUE(g.adjacent(v, (v + 1) % n));
      EXPECT_TRUE(g.adjacent((v + 1) % n, v));
      EXPECT_FALSE(g.adjacent(v, v));
      EXPECT_EQ(g.degree(v), 2u);
    }
    EXPECT_FALSE(g.adjacent(0, 2));
  }
}

TEST(SimpleGraph, EqualityIgnoresEdgeOrder) {
  EXPECT_EQ(SimpleGraph(3, {{0, 1}, {2, 1}}), SimpleGraph(3, {{1, 2}, {1, 0}}));
  EXPECT_NE(SimpleGraph(3, {{0, 1}}), SimpleGraph(4, {{0, 1}}));
}

TEST(Families, Sizes) {
  EXPECT_EQ(build(GraphFamilySpec::complete(5)).edge_count(), 10u);
  EXPECT_EQ(build(GraphFamilySpec::path(5)).edge_count(), 4u);
  EXPECT_EQ(build(GraphFamilySpec::star(5)).degree(0), 4u);
  EXPECT_THROW(build(GraphFamilySpec::cycle(2)), InvalidArgument);
  EXPECT_THROW(build(GraphFamilySpec::complete(0)), InvalidArgument);
}

TEST(Pruefer, DecodingMatchesNaiveOracle) {
  for (std::size_t m = 2; m <= 7; ++m) {
    for (const auto& seq : all_pruefer_sequences(m)) {
      const SimpleGraph t = tree_from_pruefer(m, seq);
      const auto& got = t.edges();
      EXPECT_EQ(std::set<Edge>(got.begin(), got.end()), naive_pruefer_decode(m, seq));
    }
  }
}

TEST(Pruefer, CayleyCountAndDistinctTrees) {
  for (std::size_t m = 1; m <= 6; ++m) {
    std::set<std::vector<Edge>> trees;
    for (const auto& seq : all_pruefer_sequences(m)) trees.insert(tree_from_pruefer(m, seq).edges());
    std::size_t cayley = 1;
    for (std::size_t k = 0; k + 2 < m; ++k) cayley *= m;
    EXPECT_EQ(trees.size(), cayley) << "m=" << m;
  }
}

TEST(Pruefer, RoundTrip) {
  for (std::size_t m = 2; m <= 7; ++m) {
    for (const auto& seq : all_pruefer_sequences(m)) {
      EXPECT_EQ(pruefer_encode(tree_from_pruefer(m, seq)), seq);
    }
  }
}

TEST(Pruefer, RejectsBadInput) {
  EXPECT_THROW(tree_from_pruefer(4, {0}), InvalidArgument);
  EXPECT_THROW(tree_from_pruefer(4, {0, 4}), InvalidArgument);
  EXPECT_THROW(pruefer_encode(build(GraphFamilySpec::cycle(4))), InvalidArgument);
}

TEST(RootedTrees, RepresentativeCountsMatchUnlabeledRootedTrees) {
  // Rooted unlabeled trees on m vertices: 1, 1, 2, 4, 9, 20.
  const std::vector<std::size_t> expected{1, 1, 2, 4, 9, 20};
  for (std::size_t m = 1; m <= 6; ++m) EXPECT_EQ(rooted_tree_representatives(m).size(), expected[m - 1]);
}

TEST(RootedTrees, CodeIsInvariantUnderRelabeling) {
  std::mt19937_64 rng(7);
  for (const auto& seq : all_pruefer_sequences(6)) {
    const SimpleGraph t = tree_from_pruefer(6, seq);
    std::vector<Vertex> perm{0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    const SimpleGraph u = relabel(t, perm);
    for (Vertex r = 0; r < 6; ++r) EXPECT_EQ(rooted_tree_code(t, r), rooted_tree_code(u, perm[r]));
  }
}

TEST(Operations, BridgeSumLayout) {
  const SimpleGraph a = build(GraphFamilySpec::cycle(3));
  const SimpleGraph b = build(GraphFamilySpec::path(4));
  const SimpleGraph g = bridge_sum(a, 0, b, 3);
  EXPECT_EQ(g.vertex_count(), 7u);
  EXPECT_EQ(g.edge_count(), 3u + 3u + 1u);
  EXPECT_TRUE(g.adjacent(0, 6));
  EXPECT_EQ(find_bridges(g).size(), 4u);
  EXPECT_THROW(bridge_sum(a, 3, b, 0), InvalidArgument);
}

TEST(Operations, CoronaCounts) {
  // K3 with a path on three vertices at each vertex: 3 + 3*3 vertices.
  const SimpleGraph g = corona_product(build(GraphFamilySpec::complete(3)), build(GraphFamilySpec::path(3)), 0);
  EXPECT_EQ(g.vertex_count(), 12u);
  EXPECT_EQ(g.edge_count(), 3u + 3u * 2u + 3u);
  for (Vertex i = 0; i < 3; ++i) EXPECT_TRUE(g.adjacent(i, 3 + 3 * i));
}

TEST(Operations, CoronaIsAFoldOfBridgeSums) {
  const SimpleGraph k = build(GraphFamilySpec::complete(3));
  for (const auto& seq : all_pruefer_sequences(4)) {
    const SimpleGraph t = tree_from_pruefer(4, seq);
    for (Vertex attach = 0; attach < 4; ++attach) {
      SimpleGraph folded = k;
      for (Vertex i = 0; i < 3; ++i) folded = bridge_sum(folded, i, t, attach);
      EXPECT_EQ(corona_product(k, t, attach), folded);
    }
  }
}

TEST(Operations, ChainJunctionsFollowBlockOffsets) {
  const BridgeChainSpec spec{{GraphFamilySpec::path(2), GraphFamilySpec::complete(3), GraphFamilySpec::path(2)},
                             {{1, 2}, {0, 1}}};
  const SimpleGraph g = build_chain(spec);
  EXPECT_EQ(g.vertex_count(), 7u);
  EXPECT_TRUE(g.adjacent(1, 4));
  EXPECT_TRUE(g.adjacent(2, 6));
  EXPECT_EQ(find_bridges(g).size(), 4u);
}

TEST(Bridges, MatchEdgeRemovalOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const SimpleGraph g = random_connected(3 + trial % 8, rng);
    std::set<Edge> expected;
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      if (!connected_without(g, k)) expected.insert(g.edges()[k]);
    }
    const auto got = find_bridges(g);
    EXPECT_EQ(std::set<Edge>(got.begin(), got.end()), expected);
  }
}

TEST(Classify, Recognizes) {
  EXPECT_TRUE(classify(build(GraphFamilySpec::star(5))).is_tree);
  EXPECT_TRUE(classify(build(GraphFamilySpec::complete(5))).is_complete);
  EXPECT_TRUE(classify(build(GraphFamilySpec::complete(1))).is_tree);
  EXPECT_FALSE(classify(SimpleGraph(3, {{0, 1}})).is_connected);
}

TEST(Eta, MatchesAllPairsDistances) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const SimpleGraph g = random_connected(4 + trial % 6, rng);
    const auto d = floyd_warshall(g);
    for (const Edge& e : g.edges()) {
      for (auto [l, lp] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        std::size_t count = 0;
        for (std::size_t x = 0; x < g.vertex_count(); ++x) count += d[x][lp] < d[x][l];
        EXPECT_EQ(eta(g, l, lp), count);
      }
    }
  }
  EXPECT_THROW(eta(build(GraphFamilySpec::path(3)), 0, 2), InvalidArgument);
}

TEST(Eta, BridgeCountsTheFarSide) {
  const SimpleGraph g = bridge_sum(build(GraphFamilySpec::complete(3)), 1, build(GraphFamilySpec::path(4)), 0);
  EXPECT_EQ(eta(g, 1, 3), 4u);
  EXPECT_EQ(eta(g, 3, 1), 3u);
}

TEST(GraphSource, Tokens) {
  EXPECT_EQ(parse_graph("K4"), build(GraphFamilySpec::complete(4)));
  EXPECT_EQ(parse_graph("complete:4"), build(GraphFamilySpec::complete(4)));
  EXPECT_EQ(parse_graph("tree5"), build(GraphFamilySpec::path(5)));
  EXPECT_EQ(parse_graph("pruefer:0-0"), build(GraphFamilySpec::star(4)));
  EXPECT_EQ(parse_graph("chain:tree5,complete4").vertex_count(), 9u);
  EXPECT_EQ(parse_junctions("0:1,2:0"), (std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 0}}));
  EXPECT_THROW(parse_graph("widget:3"), InvalidArgument);
  EXPECT_THROW(parse_graph("K"), InvalidArgument);
  EXPECT_THROW(parse_graph("chain:K2,K2", "0:0,1:1"), InvalidArgument);
}
