#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tpro/dynamics.hpp"
#include "tpro/enumeration.hpp"
#include "tpro/error.hpp"
#include "tpro/graph.hpp"
#include "tpro/theorems.hpp"

namespace tpro {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Graph JSON: {"vertices": n, "edges": [[u, v], ...]}, 0-based.

inline json graph_to_json(const SimpleGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

inline SimpleGraph graph_from_json(const json& j) {
  try {
    const auto n = j.at("vertices").get<std::int64_t>();
    if (n < 1) throw InvalidArgument("graph JSON: vertices must be positive");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidArgument("graph JSON: each edge must be a pair");
      const auto a = e[0].get<std::int64_t>();
      const auto b = e[1].get<std::int64_t>();
      if (a < 0 || b < 0) throw InvalidArgument("graph JSON: negative vertex index");
      edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    return SimpleGraph(static_cast<std::size_t>(n), std::move(edges));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("graph JSON: ") + e.what());
  }
}

inline std::string to_dot(const SimpleGraph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out << "  v" << v << ";\n";
  for (const Edge& e : g.edges()) out << "  v" << e.u << " -- v" << e.v << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// State JSON: {"labeling": [l_1, ..., l_n], "active": i}, 1-based labels.

inline json state_to_json(const State& s) {
  return {{"labeling", s.labeling.one_line()}, {"active", s.active}};
}

inline State state_from_json(const json& j) {
  try {
    std::vector<Label> labels;
    for (const auto& l : j.at("labeling")) {
      const auto x = l.get<std::int64_t>();
      if (x < 1) throw InvalidArgument("state JSON: labels start at 1");
      labels.push_back(static_cast<Label>(x));
    }
    const auto active = j.at("active").get<std::int64_t>();
    if (active < 1) throw InvalidArgument("state JSON: active label starts at 1");
    return State(Labeling(std::move(labels)), static_cast<Label>(active));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("state JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Verification reports

inline constexpr const char* kReportCsvHeader = "graph_id,state_one_line,active,measured_length,predicted_length,match,seed";

inline std::string csv_row(const StateRow& r) {
  std::string predicted = r.predicted ? std::to_string(*r.predicted) : "";
  return r.graph_id + ",\"" + r.state.labeling.to_string() + "\"," + std::to_string(r.state.active) + "," +
         std::to_string(r.measured) + "," + predicted + "," + (r.match ? "true" : "false") + "," + std::to_string(r.seed);
}

inline json row_to_json(const StateRow& r) {
  return {{"graph_id", r.graph_id},
          {"state_one_line", r.state.labeling.to_string()},
          {"active", r.state.active},
          {"measured_length", r.measured},
          {"predicted_length", r.predicted ? json(*r.predicted) : json(nullptr)},
          {"match", r.match},
          {"seed", r.seed}};
}

inline json family_report_to_json(const FamilyReport& rep) {
  json hist = json::array();
  for (auto [len, c] : rep.length_histogram) hist.push_back({{"length", len}, {"count", c}});
  json mism = json::array();
  for (const auto& r : rep.mismatches) mism.push_back(row_to_json(r));
  json out = {{"graph_id", rep.graph_id},
              {"description", rep.description},
              {"formula", to_string(rep.prediction.formula)},
              {"predicted_length", rep.prediction.length ? json(*rep.prediction.length) : json(nullptr)},
              {"mode", to_string(rep.mode)},
              {"seed", rep.seed},
              {"states_checked", rep.states_checked},
              {"histogram", hist},
              {"mismatches", mism},
              {"passed", rep.passed()}};
  if (!rep.rows.empty()) {
    json rows = json::array();
    for (const auto& r : rep.rows) rows.push_back(row_to_json(r));
    out["rows"] = rows;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Census: CSV "length,count" ascending; JSON with metadata.

inline std::string census_csv(const OrbitCensus& c) {
  std::string out = "length,count\n";
  for (auto [len, count] : c.entries) out += std::to_string(len) + "," + std::to_string(count) + "\n";
  return out;
}

inline json census_to_json(const OrbitCensus& c, const SimpleGraph& g) {
  json entries = json::array();
  for (auto [len, count] : c.entries) entries.push_back({{"length", len}, {"count", count}});
  return {{"graph_hash", graph_id(g)},
          {"mode", to_string(c.mode)},
          {"seed", c.seed},
          {"budget", c.budget},
          {"complete", c.complete},
          {"total_states", c.total_states},
          {"entries", entries}};
}

// ---------------------------------------------------------------------------
// Exploration evidence

inline std::string fraction_string(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  if (g == 0) return "0";
  num /= g;
  den /= g;
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

inline constexpr const char* kWindingCsvHeader =
    "graph_id,state_one_line,active,measured_length,factor,inferred_w,literal_w,literal_defined,cycle_winding,match,seed";

inline std::string winding_csv(const CycleExploration& ex) {
  std::string out = std::string(kWindingCsvHeader) + "\n";
  for (const auto& r : ex.rows) {
    out += ex.graph_id + ",\"" + r.state.labeling.to_string() + "\"," + std::to_string(r.state.active) + "," +
           std::to_string(r.measured) + "," + std::to_string(ex.factor) + "," +
           fraction_string(r.inferred.numerator, r.inferred.denominator) + "," +
           (r.literal.defined ? fraction_string(r.literal.numerator, r.literal.denominator) : "") + "," +
           (r.literal.defined ? "true" : "false") + "," + std::to_string(r.literal.cycle_winding) + "," +
           (r.match ? "true" : "false") + "," + std::to_string(ex.seed) + "\n";
  }
  return out;
}

inline json winding_to_json(const CycleExploration& ex) {
  json rows = json::array();
  std::map<std::string, std::uint64_t> inferred_hist;
  for (const auto& r : ex.rows) {
    const auto w = fraction_string(r.inferred.numerator, r.inferred.denominator);
    ++inferred_hist[w];
    rows.push_back({{"state_one_line", r.state.labeling.to_string()},
                    {"active", r.state.active},
                    {"measured_length", r.measured},
                    {"inferred_w", w},
                    {"inferred_integral", r.inferred.integral()},
                    {"literal_w", r.literal.defined ? json(fraction_string(r.literal.numerator, r.literal.denominator))
                                                    : json(nullptr)},
                    {"literal_integral", r.literal.integral()},
                    {"cycle_winding", r.literal.cycle_winding},
                    {"match", r.match}});
  }
  json hist = json::object();
  for (const auto& [w, c] : inferred_hist) hist[w] = c;
  return {{"graph_id", ex.graph_id},
          {"other_block", to_string(ex.other_kind)},
          {"other_size", ex.other_size},
          {"cycle_size", ex.cycle_size},
          {"factor", ex.factor},
          {"mode", to_string(ex.mode)},
          {"seed", ex.seed},
          {"literal_reading", kLiteralWindingReading},
          {"inferred_reading", kInferredWindingReading},
          {"agreement_rate", ex.agreement_rate()},
          {"inferred_w_histogram", hist},
          {"rows", rows}};
}

inline json chain_to_json(const ChainExploration& ex, const SimpleGraph& g) {
  json ce = json::array();
  for (const auto& r : ex.counterexamples) ce.push_back(row_to_json(r));
  return {{"graph_id", ex.graph_id},
          {"vertices", ex.vertex_count},
          {"predicted_length", ex.predicted},
          {"census", census_to_json(ex.census, g)},
          {"counterexample_count", ex.counterexample_count},
          {"counterexamples", ce}};
}

}  // namespace tpro
