#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tpro/error.hpp"
#include "tpro/graph.hpp"
#include "tpro/theorems.hpp"

namespace tpro {

// Textual graph sources used by the command line:
//
//   path:4  star:5  complete:4  cycle:5  tree:5      (tree:m is the path on m)
//   P4      S5      K4          C5       T5   tree5 complete4 ...
//   pruefer:0-0-3                                    (tree on len+2 vertices)
//   chain:tree5,complete4                            (bridge chain, junctions 0:0)

namespace detail {

inline std::size_t parse_size(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InvalidArgument("missing size in graph token '" + std::string(whole) + "'");
  std::size_t n = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument("bad size in graph token '" + std::string(whole) + "'");
    }
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return n;
}

}  // namespace detail

inline GraphFamilySpec parse_family(std::string_view token) {
  std::string_view kind;
  std::string_view arg;
  if (auto colon = token.find(':'); colon != std::string_view::npos) {
    kind = token.substr(0, colon);
    arg = token.substr(colon + 1);
  } else {
    std::size_t k = 0;
    while (k < token.size() && std::isalpha(static_cast<unsigned char>(token[k]))) ++k;
    kind = token.substr(0, k);
    arg = token.substr(k);
  }
  if (kind == "pruefer") {
    std::vector<Vertex> seq;
    std::size_t pos = 0;
    while (pos < arg.size()) {
      const std::size_t end = arg.find('-', pos);
      seq.push_back(static_cast<Vertex>(detail::parse_size(arg.substr(pos, end - pos), token)));
      if (end == std::string_view::npos) break;
      pos = end + 1;
    }
    return GraphFamilySpec::tree(std::move(seq));
  }
  const std::size_t n = detail::parse_size(arg, token);
  if (kind == "path" || kind == "P" || kind == "tree" || kind == "T") return GraphFamilySpec::path(n);
  if (kind == "star" || kind == "S") return GraphFamilySpec::star(n);
  if (kind == "complete" || kind == "K") return GraphFamilySpec::complete(n);
  if (kind == "cycle" || kind == "C") return GraphFamilySpec::cycle(n);
  throw InvalidArgument("unknown graph family '" + std::string(kind) + "'");
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = text.find(sep, pos);
    out.push_back(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

// "0:1,2:0" -> {(0,1), (2,0)}
inline std::vector<std::pair<Vertex, Vertex>> parse_junctions(std::string_view text) {
  std::vector<std::pair<Vertex, Vertex>> out;
  if (text.empty()) return out;
  for (auto item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw InvalidArgument("junction must look like a:b, got '" + std::string(item) + "'");
    out.emplace_back(static_cast<Vertex>(detail::parse_size(parts[0], item)),
                     static_cast<Vertex>(detail::parse_size(parts[1], item)));
  }
  return out;
}

inline BridgeChainSpec parse_chain(std::string_view blocks, std::string_view junctions = {}) {
  BridgeChainSpec spec;
  for (auto tok : split(blocks, ',')) spec.blocks.push_back(parse_family(tok));
  spec.junctions = parse_junctions(junctions);
  if (spec.junctions.empty() && spec.blocks.size() > 1) spec.junctions.assign(spec.blocks.size() - 1, {0, 0});
  if (spec.junctions.size() + 1 != spec.blocks.size()) throw InvalidArgument("junction count does not match blocks");
  return spec;
}

// Single family token or "chain:<blocks>".
inline SimpleGraph parse_graph(std::string_view source, std::string_view junctions = {}) {
  if (source.starts_with("chain:")) return build_chain(parse_chain(source.substr(6), junctions));
  return build(parse_family(source));
}

inline Block block_of(const GraphFamilySpec& spec) {
  using Kind = GraphFamilySpec::Kind;
  switch (spec.kind) {
    case Kind::complete: return {BlockKind::complete, spec.size};
    case Kind::cycle: return {spec.size == 3 ? BlockKind::complete : BlockKind::cycle, spec.size};
    case Kind::path:
    case Kind::star:
    case Kind::tree_from_pruefer: return {BlockKind::tree, spec.size};
    case Kind::explicit_edges: break;
  }
  throw InvalidArgument("explicit graphs have no declared block kind");
}

// Declared composition for a source string, when it names a covered family.
inline Composition composition_of(std::string_view source) {
  if (source.starts_with("chain:")) {
    const auto spec = parse_chain(source.substr(6));
    std::vector<Block> blocks;
    for (const auto& b : spec.blocks) blocks.push_back(block_of(b));
    if (blocks.size() == 1) return Composition::single(blocks[0].kind, blocks[0].size);
    if (blocks.size() == 2) return Composition::bridge(blocks[0], blocks[1]);
    return Composition::chain(std::move(blocks));
  }
  const Block b = block_of(parse_family(source));
  return Composition::single(b.kind, b.size);
}

}  // namespace tpro
