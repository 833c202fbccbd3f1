#include <gtest/gtest.h>

#include <random>

#include "tpro/graph_source.hpp"
#include "tpro/stone_diagram.hpp"
#include "tpro/theorems.hpp"

using namespace tpro;

namespace {

SimpleGraph triangle_with_path() {
  return bridge_sum(build(GraphFamilySpec::cycle(3)), 2, build(GraphFamilySpec::path(3)), 0);
}

}  // namespace

TEST(Predict, Formulas) {
  const SimpleGraph k5 = build(GraphFamilySpec::complete(5));
  EXPECT_EQ(predict(k5, Composition::single(BlockKind::complete, 5)).length, 5u);
  const SimpleGraph p6 = build(GraphFamilySpec::path(6));
  EXPECT_EQ(predict(p6, Composition::single(BlockKind::tree, 6)).length, 30u);
  const SimpleGraph kk = bridge_sum(build(GraphFamilySpec::complete(3)), 0, build(GraphFamilySpec::complete(4)), 0);
  const auto p = predict(kk, Composition::bridge({BlockKind::complete, 3}, {BlockKind::complete, 4}));
  EXPECT_EQ(p.formula, FormulaId::complete_bridge_complete);
  EXPECT_EQ(p.length, 42u);
  const SimpleGraph cor = corona_product(build(GraphFamilySpec::complete(2)), build(GraphFamilySpec::path(3)), 0);
  EXPECT_EQ(predict(cor, Composition::corona(2, 3)).length, 56u);
  EXPECT_THROW(predict(k5, Composition::single(BlockKind::complete, 4)), InvalidArgument);
}

TEST(Predict, CycleBridgesAreSymbolic) {
  const SimpleGraph g = bridge_sum(build(GraphFamilySpec::path(2)), 0, build(GraphFamilySpec::cycle(4)), 0);
  const auto p = predict(g, Composition::bridge({BlockKind::tree, 2}, {BlockKind::cycle, 4}));
  EXPECT_FALSE(p.length);
  EXPECT_EQ(p.factor, 30u);
  EXPECT_EQ(p.formula, FormulaId::conjecture_tree_cycle);
}

TEST(DetectComposition, FindsBlocks) {
  const auto c = detect_composition(parse_graph("chain:tree5,complete4"));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->shape, Composition::Shape::bridge_sum);
  EXPECT_EQ(c->vertex_count(), 9u);
  EXPECT_FALSE(detect_composition(build(GraphFamilySpec::cycle(5))));
  EXPECT_EQ(composition_of("chain:tree5,complete4").blocks[1].kind, BlockKind::complete);
}

TEST(VerifyFamily, ExhaustiveTreeAndMismatchReporting) {
  const SimpleGraph t = build(GraphFamilySpec::star(5));
  const auto good = verify_family(t, predict(t, Composition::single(BlockKind::tree, 5)), EnumerationPlan::exhaustive());
  EXPECT_TRUE(good.passed());
  EXPECT_EQ(good.states_checked, 600u);
  EXPECT_EQ(good.length_histogram, (std::map<std::uint64_t, std::uint64_t>{{20, 600}}));

  Prediction wrong{FormulaId::tree, 19, 19, "deliberately wrong"};
  const auto bad = verify_family(t, wrong, EnumerationPlan::exhaustive());
  EXPECT_FALSE(bad.passed());
  EXPECT_EQ(bad.mismatches.size(), 600u);
}

TEST(VerifyFamily, SampledRecordsEveryRowWhenAsked) {
  const SimpleGraph g = parse_graph("chain:tree5,complete4");
  const auto rep = verify_family(g, predict(g, *detect_composition(g)), EnumerationPlan::sampled(40, 5), "", true);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.rows.size(), 40u);
  for (const auto& r : rep.rows) EXPECT_EQ(r.measured, 72u);
}

TEST(Structure, ConstantLabelingOnCompleteOrbits) {
  EXPECT_TRUE(labeling_constant_on_orbits(build(GraphFamilySpec::complete(5))));
  EXPECT_FALSE(labeling_constant_on_orbits(build(GraphFamilySpec::path(4))));
  EXPECT_TRUE(tpro_is_bijective(build(GraphFamilySpec::cycle(5))));
}

TEST(Structure, OrbitRepresentativesCoverEveryState) {
  const SimpleGraph g = build(GraphFamilySpec::cycle(4));
  std::uint64_t covered = 0;
  for (const State& s : orbit_representatives(g)) covered += orbit_length(g, s).length;
  EXPECT_EQ(covered, 96u);
}

TEST(AttachedBlock, Validation) {
  const SimpleGraph g = triangle_with_path();
  const auto b = attached_block(g, {3, 4, 5});
  EXPECT_EQ(b.kind, BlockKind::tree);
  EXPECT_EQ(b.block_endpoint, 3u);
  EXPECT_EQ(b.outer_endpoint, 2u);
  EXPECT_EQ(attached_block(g, {0, 1, 2}).kind, BlockKind::complete);
  EXPECT_THROW(attached_block(g, {3, 4, 5}, BlockKind::complete), InvalidArgument);
  EXPECT_THROW(attached_block(g, {1, 2}), InvalidArgument);
}

TEST(Restriction, CycleWithTreeExtensionsAgree) {
  const SimpleGraph g = bridge_sum(build(GraphFamilySpec::cycle(4)), 1, build(GraphFamilySpec::path(2)), 1);
  const std::vector<Vertex> fixed{0, 1, 2, 3};
  const auto rep = verify_restriction_independence(g, fixed, {6, 2, 4, 1}, 3, 100, 1);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.states_checked, 2u);
  const auto all = verify_restriction_independence_exhaustive(g, fixed, EnumerationPlan::exhaustive());
  EXPECT_TRUE(all.passed());
  EXPECT_EQ(all.states_checked, 4320u);
  EXPECT_EQ(all.classes_checked, 4320u / 2u);
}

TEST(Restriction, DetectsDependenceWhenTheBlockIsNotAttached) {
  // Vertices 4, 5 hang off different cycle vertices, so they are not one block.
  const SimpleGraph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {2, 5}});
  EXPECT_THROW(verify_restriction_independence_exhaustive(g, {0, 1, 2, 3}, EnumerationPlan::exhaustive()),
               InvalidArgument);
}

TEST(Lemma, TriangleWithPathDwellsFifteenSteps) {
  const SimpleGraph g = triangle_with_path();
  const auto rep = verify_lemma_sd_rotation(g, State::parse("123456", 1), Edge(2, 3), 3, SideKind::tree);
  EXPECT_EQ(rep.expected_gap, 15u);
  ASSERT_FALSE(rep.excursions.empty());
  for (const auto& ex : rep.excursions) {
    EXPECT_EQ(ex.outbound_time - ex.inbound_time, 15u);
    EXPECT_EQ(ex.rotation, std::optional<std::size_t>(3));
    EXPECT_TRUE(ex.ok());
  }
}

TEST(Lemma, CompleteSideOnEveryOrbit) {
  const SimpleGraph g = bridge_sum(build(GraphFamilySpec::path(3)), 1, build(GraphFamilySpec::complete(3)), 2);
  std::uint64_t excursions = 0;
  for (const State& s : orbit_representatives(g)) {
    const auto rep = verify_lemma_sd_rotation(g, s, Edge(1, 5), 5, SideKind::complete);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.expected_gap, 15u);
    excursions += rep.excursions.size();
  }
  EXPECT_GT(excursions, 0u);
  EXPECT_THROW(verify_lemma_sd_rotation(g, State(Labeling::identity(6), 1), Edge(1, 5), 5, SideKind::tree),
               InvalidArgument);
}

TEST(Lemma, CrossingLogAlternatesDirections) {
  const SimpleGraph g = triangle_with_path();
  const auto log = crossing_log(g, State::parse("123456", 1), Edge(2, 3), 30);
  ASSERT_GE(log.size(), 2u);
  for (std::size_t k = 1; k < log.size(); ++k) EXPECT_NE(log[k].from, log[k - 1].from);
}

TEST(Directional, HoldsOnBridgedCompleteBlocks) {
  const SimpleGraph g = bridge_sum(build(GraphFamilySpec::complete(3)), 0, build(GraphFamilySpec::cycle(4)), 0);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const State s = random_state(7, rng);
    const auto rep = verify_directional(g, s, {0, 1, 2}, orbit_length(g, s).length);
    EXPECT_TRUE(rep.passed());
    EXPECT_GT(rep.steps_in_block, 0u);
  }
  EXPECT_THROW(verify_directional(g, State(Labeling::identity(7), 1), {3, 4, 5, 6}, 5), InvalidArgument);
}

TEST(Winding, InferredIsLengthOverFactor) {
  const WindingInput in = make_cycle_bridge(build(GraphFamilySpec::path(2)), BlockKind::tree, 4);
  EXPECT_EQ(in.cycle_order, (std::vector<Vertex>{2, 3, 4, 5}));
  EXPECT_EQ(in.cycle_endpoint, 2u);
  const State s(Labeling::identity(6), 1);
  const auto w = winding_number(in, s, WindingInterpretation::inferred);
  EXPECT_EQ(w.numerator, orbit_length(in.graph, s).length);
  EXPECT_EQ(w.denominator, 30u);
  EXPECT_EQ(w.reading, kInferredWindingReading);
}

TEST(Winding, TriangleCycleAlwaysGivesOne) {
  // cycle(3) is K3, so every orbit has length N(N-1).
  const WindingInput in = make_cycle_bridge(build(GraphFamilySpec::path(2)), BlockKind::tree, 3);
  const auto ex = explore_cycle_bridge(in, EnumerationPlan::exhaustive());
  EXPECT_EQ(ex.rows.size(), 600u);
  for (const auto& r : ex.rows) {
    EXPECT_EQ(r.inferred.numerator, r.inferred.denominator);
    EXPECT_TRUE(r.literal.defined);
  }
}

TEST(Winding, LiteralReadingMatchesDiagramWalk) {
  const WindingInput in = make_cycle_bridge(build(GraphFamilySpec::path(2)), BlockKind::tree, 4, 1, 2);
  const std::size_t total = 6;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const State s = random_state(total, rng);
    // First step at which the coin moves from the cycle endpoint to the tree.
    State cur = s;
    std::uint64_t t = 0;
    while (!(cur.coin() == in.cycle_endpoint && tpro_step(in.graph, cur).coin() == in.other_endpoint)) {
      cur = tpro_step(in.graph, cur);
      ASSERT_LT(++t, 10000u);
    }
    const StoneDiagram sd = from_state(cur);
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < in.cycle_order.size(); ++k) {
      const Label from = sd.position_of(in.cycle_order[k]);
      const Label to = sd.position_of(in.cycle_order[(k + 1) % in.cycle_order.size()]);
      std::uint64_t passed = 0;
      for (Label p = from % total + 1; p != to; p = p % total + 1) passed += sd.replica_at(p) < 2;
      sum += 1 + passed;
    }
    const auto w = winding_number(in, s, WindingInterpretation::literal);
    ASSERT_TRUE(w.defined);
    EXPECT_EQ(w.crossing_time, std::optional<std::uint64_t>(t));
    EXPECT_EQ(w.numerator, sum);
    EXPECT_EQ(w.denominator, total - 1);
    EXPECT_EQ(w.reading, kLiteralWindingReading);
  }
}

TEST(Explore, ChainCensusOfThreeEdges) {
  const SimpleGraph g = parse_graph("chain:K2,K2,K2");
  const auto ex = explore_chain(g, EnumerationPlan::exhaustive());
  EXPECT_EQ(ex.vertex_count, 6u);
  EXPECT_EQ(ex.census.entries, (std::map<std::uint64_t, std::uint64_t>{{30, 4320}}));
  EXPECT_EQ(ex.counterexample_count, 0u);
}
