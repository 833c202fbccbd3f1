#include <gtest/gtest.h>

#include "tpro/graph_source.hpp"
#include "tpro/io.hpp"

using namespace tpro;

TEST(GraphJson, RoundTrip) {
  const SimpleGraph g = parse_graph("chain:tree4,K3");
  const json j = graph_to_json(g);
  EXPECT_EQ(j.at("vertices"), 7);
  EXPECT_EQ(graph_from_json(j), g);
  EXPECT_EQ(graph_from_json(json::parse(j.dump())), g);
}

TEST(GraphJson, RejectsMalformed) {
  EXPECT_THROW(graph_from_json(json::parse(R"({"vertices": 3, "edges": [[0, 0]]})")), InvalidArgument);
  EXPECT_THROW(graph_from_json(json::parse(R"({"vertices": 3, "edges": [[0, 1], [1, 0]]})")), InvalidArgument);
  EXPECT_THROW(graph_from_json(json::parse(R"({"vertices": 3, "edges": [[0, 5]]})")), InvalidArgument);
  EXPECT_THROW(graph_from_json(json::parse(R"({"vertices": 3, "edges": [[0, 1, 2]]})")), InvalidArgument);
  EXPECT_THROW(graph_from_json(json::parse(R"({"edges": []})")), InvalidArgument);
  EXPECT_THROW(graph_from_json(json::parse(R"({"vertices": "x", "edges": []})")), InvalidArgument);
}

TEST(StateJson, RoundTripAndValidation) {
  const State s = State::parse("4123", 2);
  EXPECT_EQ(state_from_json(state_to_json(s)), s);
  EXPECT_EQ(state_to_json(s).dump(), R"({"active":2,"labeling":[4,1,2,3]})");
  EXPECT_THROW(state_from_json(json::parse(R"({"labeling": [1, 1], "active": 1})")), InvalidArgument);
  EXPECT_THROW(state_from_json(json::parse(R"({"labeling": [1, 2], "active": 3})")), InvalidArgument);
  EXPECT_THROW(state_from_json(json::parse(R"({"labeling": [0, 1], "active": 1})")), InvalidArgument);
}

TEST(Dot, ListsEveryVertexAndEdge) {
  const std::string dot = to_dot(build(GraphFamilySpec::path(3)));
  EXPECT_EQ(dot, "graph G {\n  v0;\n  v1;\n  v2;\n  v0 -- v1;\n  v1 -- v2;\n}\n");
}

TEST(Reports, CsvRow) {
  StateRow r{"n3-abc", State::parse("321", 2), 6, 6, true, 7};
  EXPECT_EQ(csv_row(r), "n3-abc,\"321\",2,6,6,true,7");
  r.predicted.reset();
  r.match = false;
  EXPECT_EQ(csv_row(r), "n3-abc,\"321\",2,6,,false,7");
  EXPECT_EQ(std::string(kReportCsvHeader), "graph_id,state_one_line,active,measured_length,predicted_length,match,seed");
}

TEST(Reports, CensusCsvAndJson) {
  const SimpleGraph g = build(GraphFamilySpec::complete(4));
  const OrbitCensus c = census(g, EnumerationPlan::exhaustive());
  EXPECT_EQ(census_csv(c), "length,count\n4,96\n");
  const json j = census_to_json(c, g);
  EXPECT_EQ(j.at("graph_hash"), graph_id(g));
  EXPECT_EQ(j.at("mode"), "exhaustive");
  EXPECT_EQ(j.at("seed"), kDefaultSeed);
  EXPECT_EQ(j.at("budget"), kDefaultBudget);
  EXPECT_EQ(j.at("total_states"), 96);
  EXPECT_EQ(j.at("entries"), json::parse(R"([{"length": 4, "count": 96}])"));
}

TEST(Reports, FamilyReportJson) {
  const SimpleGraph g = build(GraphFamilySpec::path(3));
  const auto rep = verify_family(g, predict(g, Composition::single(BlockKind::tree, 3)), EnumerationPlan::exhaustive());
  const json j = family_report_to_json(rep);
  EXPECT_EQ(j.at("formula"), to_string(FormulaId::tree));
  EXPECT_EQ(j.at("predicted_length"), 6);
  EXPECT_EQ(j.at("states_checked"), 18);
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_TRUE(j.at("mismatches").empty());
}

TEST(Reports, WindingTablesAreDeterministic) {
  const WindingInput in = make_cycle_bridge(build(GraphFamilySpec::complete(2)), BlockKind::complete, 3);
  const auto a = explore_cycle_bridge(in, EnumerationPlan::exhaustive(1));
  const auto b = explore_cycle_bridge(in, EnumerationPlan::exhaustive(4));
  EXPECT_EQ(winding_csv(a), winding_csv(b));
  EXPECT_EQ(winding_to_json(a).dump(), winding_to_json(b).dump());
  const std::string csv = winding_csv(a);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kWindingCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 601);
  const json j = winding_to_json(a);
  EXPECT_EQ(j.at("rows").size(), 600u);
  EXPECT_EQ(j.at("inferred_w_histogram"), json::parse(R"({"1": 600})"));
  EXPECT_EQ(j.at("literal_reading"), kLiteralWindingReading);
}

TEST(Fractions, Reduce) {
  EXPECT_EQ(fraction_string(60, 30), "2");
  EXPECT_EQ(fraction_string(5, 4), "5/4");
  EXPECT_EQ(fraction_string(6, 4), "3/2");
  EXPECT_EQ(fraction_string(0, 4), "0");
}
