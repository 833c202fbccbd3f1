#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "tpro/enumeration.hpp"
#include "tpro/graph.hpp"

using namespace tpro;

TEST(Lehmer, RanksFollowLexicographicOrder) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<Label> perm(n);
    std::iota(perm.begin(), perm.end(), Label{1});
    std::uint64_t expected = 0;
    do {
      EXPECT_EQ(lehmer_rank(perm), expected);
      EXPECT_EQ(lehmer_unrank(expected, n), perm);
      ++expected;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(expected, factorial(n));
  }
}

TEST(Lehmer, StateIndexRoundTrip) {
  for (std::uint64_t idx = 0; idx < factorial(5) * 5; ++idx) EXPECT_EQ(state_index(state_at(idx, 5)), idx);
  EXPECT_THROW(lehmer_unrank(factorial(4), 4), InvalidArgument);
}

TEST(ForEachState, ExhaustiveVisitsEveryStateOnceInIndexOrder) {
  std::uint64_t expected = 0;
  for_each_state(4, EnumerationPlan::exhaustive(), [&](const State& s) { EXPECT_EQ(state_index(s), expected++); });
  EXPECT_EQ(expected, 96u);
}

TEST(ForEachState, SampledIsSeeded) {
  const auto a = enumerate_states(7, EnumerationPlan::sampled(50, 1));
  const auto b = enumerate_states(7, EnumerationPlan::sampled(50, 1));
  const auto c = enumerate_states(7, EnumerationPlan::sampled(50, 2));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(a.size(), 50u);
}

TEST(ForEachState, ExhaustiveGuards) {
  EXPECT_THROW(enumerate_states(kMaxExhaustiveVertices + 1, EnumerationPlan::exhaustive()), BudgetExceeded);
  EnumerationPlan tight = EnumerationPlan::exhaustive();
  tight.budget = 100;
  EXPECT_THROW(enumerate_states(5, tight), BudgetExceeded);
}

TEST(Census, ConservesStatesAndCountsWholeOrbits) {
  for (const SimpleGraph& g : {build(GraphFamilySpec::cycle(5)), build(GraphFamilySpec::star(5)),
                               SimpleGraph(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}})}) {
    const OrbitCensus c = census(g, EnumerationPlan::exhaustive());
    std::uint64_t sum = 0;
    for (auto [len, count] : c.entries) {
      sum += count;
      EXPECT_EQ(count % len, 0u);
    }
    EXPECT_EQ(sum, factorial(5) * 5);
    EXPECT_EQ(c.total_states, sum);
    EXPECT_TRUE(c.complete);
  }
}

TEST(Census, CompleteGraphHasOneLength) {
  const OrbitCensus c = census(build(GraphFamilySpec::complete(4)), EnumerationPlan::exhaustive());
  EXPECT_EQ(c.entries, (std::map<std::uint64_t, std::uint64_t>{{4, 96}}));
  EXPECT_EQ(c.orbit_count(4), 24u);
}

TEST(Census, ShardCountDoesNotChangeTheResult) {
  const SimpleGraph g = build(GraphFamilySpec::cycle(6));
  const OrbitCensus one = census(g, EnumerationPlan::exhaustive(1));
  for (std::size_t shards : {2u, 3u, 7u, 64u, 720u, 5000u}) {
    EnumerationPlan p = EnumerationPlan::exhaustive(shards);
    p.jobs = 4;
    OrbitCensus c = census(g, p);
    c.steps = one.steps;
    EXPECT_EQ(c, one) << shards << " shards";
  }
}

TEST(Census, OrbitTableIsShardIndependent) {
  const SimpleGraph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {3, 4}, {4, 5}});
  const auto one = orbit_length_table(g, EnumerationPlan::exhaustive(1));
  EXPECT_EQ(orbit_length_table(g, EnumerationPlan::exhaustive(13)), one);
  for (std::uint64_t idx = 0; idx < one.size(); idx += 97) {
    EXPECT_EQ(one[idx], orbit_length(g, state_at(idx, 6)).length);
  }
}

TEST(Census, SampledIsDeterministicAcrossShards) {
  const SimpleGraph g = build(GraphFamilySpec::cycle(8));
  EnumerationPlan p = EnumerationPlan::sampled(300, 99);
  const OrbitCensus a = census(g, p);
  p.partition = 5;
  const OrbitCensus b = census(g, p);
  EXPECT_EQ(a.entries, b.entries);
  EXPECT_EQ(a.total_states, 300u);
}

TEST(Census, BudgetStopsSampledRuns) {
  EnumerationPlan p = EnumerationPlan::sampled(1000, 3);
  p.budget = 5000;
  const OrbitCensus c = census(build(GraphFamilySpec::path(8)), p);
  EXPECT_FALSE(c.complete);
  EXPECT_LT(c.total_states, 1000u);
}

TEST(RunShards, PropagatesExceptions) {
  EXPECT_THROW(run_shards(4, 2, [](std::size_t s) {
                 if (s == 2) throw InvalidArgument("boom");
               }),
               InvalidArgument);
}
