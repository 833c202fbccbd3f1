#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tpro/dynamics.hpp"
#include "tpro/error.hpp"
#include "tpro/graph.hpp"

namespace tpro {

// A state drawn on the n-cycle: the replica of vertex v sits at clockwise
// position sigma(v), the stone at position i, and the coin on the vertex
// whose replica rides the stone. Positions are 1-based like labels.
class StoneDiagram {
 public:
  StoneDiagram(std::vector<Vertex> positions, Label stone_at, Vertex coin_at)
      : positions_(std::move(positions)), stone_(stone_at), coin_(coin_at) {
    const std::size_t n = positions_.size();
    if (n == 0) throw InvalidArgument("stone diagram must be nonempty");
    std::vector<bool> seen(n, false);
    for (Vertex r : positions_) {
      if (r >= n || seen[r]) throw InvalidArgument("stone diagram positions are not a bijection");
      seen[r] = true;
    }
    if (stone_ < 1 || stone_ > n) throw InvalidArgument("stone position out of range");
    if (positions_[stone_ - 1] != coin_) throw InvalidArgument("coin does not match replica on stone");
  }

  std::size_t size() const { return positions_.size(); }
  // Replica at clockwise position p in {1..n}.
  Vertex replica_at(Label p) const { return positions_[p - 1]; }
  Label position_of(Vertex r) const {
    for (std::size_t p = 0; p < positions_.size(); ++p) {
      if (positions_[p] == r) return static_cast<Label>(p + 1);
    }
    throw InvalidArgument("no replica " + std::to_string(r));
  }
  Label stone_at() const { return stone_; }
  Vertex coin_at() const { return coin_; }
  const std::vector<Vertex>& positions() const { return positions_; }

  bool operator==(const StoneDiagram&) const = default;

 private:
  friend StoneDiagram sd_step(const SimpleGraph& g, StoneDiagram sd);
  friend StoneDiagram rotate_clockwise(StoneDiagram sd, std::size_t k);

  std::vector<Vertex> positions_;
  Label stone_ = 1;
  Vertex coin_ = 0;
};

inline StoneDiagram from_state(const State& s) {
  const std::size_t n = s.size();
  std::vector<Vertex> positions(n);
  for (Vertex v = 0; v < n; ++v) positions[s.labeling.label_of(v) - 1] = v;
  return StoneDiagram(std::move(positions), s.active, s.coin());
}

inline StoneDiagram from_state(const SimpleGraph& g, const State& s) {
  check_state_for(g, s);
  return from_state(s);
}

inline State to_state(const StoneDiagram& sd) {
  std::vector<Label> labels(sd.size());
  for (Label p = 1; p <= sd.size(); ++p) labels[sd.replica_at(p)] = p;
  return State(Labeling(std::move(labels)), sd.stone_at());
}

// Looks at the replica on the stone and the one a position clockwise. Adjacent
// vertices: the stone slides and the coin follows. Otherwise the two replicas
// trade places, the stone carrying its replica one position clockwise.
inline StoneDiagram sd_step(const SimpleGraph& g, StoneDiagram sd) {
  const std::size_t n = sd.size();
  const std::size_t here = sd.stone_ - 1;
  const std::size_t ahead = sd.stone_ % n;
  const Vertex on_stone = sd.positions_[here];
  const Vertex facing = sd.positions_[ahead];
  if (g.adjacent(on_stone, facing)) {
    sd.coin_ = facing;
  } else {
    std::swap(sd.positions_[here], sd.positions_[ahead]);
  }
  sd.stone_ = static_cast<Label>(ahead + 1);
  return sd;
}

// cyc^k: every replica and the stone move k positions clockwise.
inline StoneDiagram rotate_clockwise(StoneDiagram sd, std::size_t k) {
  const std::size_t n = sd.size();
  k %= n;
  std::rotate(sd.positions_.rbegin(), sd.positions_.rbegin() + static_cast<std::ptrdiff_t>(k),
              sd.positions_.rend());
  sd.stone_ = static_cast<Label>((sd.stone_ - 1 + k) % n + 1);
  return sd;
}

inline StoneDiagram cyc(const StoneDiagram& sd) { return rotate_clockwise(sd, 1); }

// The unique k in [0, n) with b = cyc^k(a), if any. The candidate comes from
// where replica 0 landed; replicas are distinct so no other k can work.
inline std::optional<std::size_t> is_cyclic_rotation(const StoneDiagram& a, const StoneDiagram& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidArgument("stone diagrams differ in size");
  const std::size_t k = (b.position_of(0) + n - a.position_of(0)) % n;
  if ((a.stone_at() - 1 + k) % n + 1 != b.stone_at()) return std::nullopt;
  for (Label p = 1; p <= n; ++p) {
    if (b.replica_at(static_cast<Label>((p - 1 + k) % n + 1)) != a.replica_at(p)) return std::nullopt;
  }
  return k;
}

// ---------------------------------------------------------------------------
// Rendering

enum class RenderFormat { ascii, svg, dot };

inline RenderFormat parse_render_format(std::string_view name) {
  if (name == "ascii") return RenderFormat::ascii;
  if (name == "svg") return RenderFormat::svg;
  if (name == "dot") return RenderFormat::dot;
  throw InvalidArgument("unknown render format '" + std::string(name) + "'");
}

// `1:v2 2:v0 3:v1 | stone=1 coin=v2`
inline std::string render_ascii_line(const StoneDiagram& sd) {
  std::string line;
  for (Label p = 1; p <= sd.size(); ++p) {
    if (p > 1) line += ' ';
    line += std::to_string(p) + ":v" + std::to_string(sd.replica_at(p));
  }
  line += " | stone=" + std::to_string(sd.stone_at()) + " coin=v" + std::to_string(sd.coin_at());
  return line;
}

namespace detail {

inline std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

inline std::string render_svg(const std::vector<StoneDiagram>& seq) {
  constexpr double kPanel = 160.0;
  constexpr double kRadius = 55.0;
  constexpr std::size_t kPerRow = 6;
  const std::size_t rows = (seq.size() + kPerRow - 1) / kPerRow;
  const std::size_t cols = std::min(seq.size(), kPerRow);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed2(cols * kPanel)
      << "\" height=\"" << fixed2(rows * kPanel) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t idx = 0; idx < seq.size(); ++idx) {
    const StoneDiagram& sd = seq[idx];
    const std::size_t n = sd.size();
    const double cx = (idx % kPerRow) * kPanel + kPanel / 2;
    const double cy = (idx / kPerRow) * kPanel + kPanel / 2;
    out << "<g id=\"panel" << idx << "\">\n";
    out << "<text x=\"" << fixed2(cx - kPanel / 2 + 6) << "\" y=\"" << fixed2(cy - kPanel / 2 + 14)
        << "\">t=" << idx << " coin=v" << sd.coin_at() << "</text>\n";
    out << "<circle cx=\"" << fixed2(cx) << "\" cy=\"" << fixed2(cy) << "\" r=\"" << fixed2(kRadius)
        << "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (Label p = 1; p <= n; ++p) {
      // position 1 at twelve o'clock, increasing clockwise
      const double angle = 2.0 * std::numbers::pi * (p - 1) / static_cast<double>(n);
      const double x = cx + kRadius * std::sin(angle);
      const double y = cy - kRadius * std::cos(angle);
      if (p == sd.stone_at()) {
        out << "<circle cx=\"" << fixed2(x) << "\" cy=\"" << fixed2(y)
            << "\" r=\"13\" fill=\"#bbb\" stroke=\"#333\"/>\n";
      } else {
        out << "<circle cx=\"" << fixed2(x) << "\" cy=\"" << fixed2(y) << "\" r=\"3\" fill=\"#333\"/>\n";
      }
      out << "<text x=\"" << fixed2(x) << "\" y=\"" << fixed2(y + 4)
          << "\" text-anchor=\"middle\" font-weight=\"bold\">v" << sd.replica_at(p) << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

inline std::string render_dot(const std::vector<StoneDiagram>& seq) {
  std::ostringstream out;
  out << "digraph stone_diagrams {\n  node [shape=circle];\n";
  for (std::size_t idx = 0; idx < seq.size(); ++idx) {
    const StoneDiagram& sd = seq[idx];
    const std::size_t n = sd.size();
    out << "  subgraph cluster_" << idx << " {\n    label=\"t=" << idx << " coin=v" << sd.coin_at()
        << "\";\n";
    for (Label p = 1; p <= n; ++p) {
      out << "    p" << idx << "_" << p << " [label=\"" << p << ": v" << sd.replica_at(p) << "\"";
      if (p == sd.stone_at()) out << ", style=filled, fillcolor=gray";
      out << "];\n";
    }
    for (Label p = 1; p <= n && n > 1; ++p) {
      out << "    p" << idx << "_" << p << " -> p" << idx << "_" << (p % n + 1) << ";\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace detail

inline std::string render(const std::vector<StoneDiagram>& seq, RenderFormat format) {
  if (seq.empty()) throw InvalidArgument("nothing to render");
  switch (format) {
    case RenderFormat::ascii: {
      std::string out;
      for (const auto& sd : seq) out += render_ascii_line(sd) + '\n';
      return out;
    }
    case RenderFormat::svg:
      return detail::render_svg(seq);
    case RenderFormat::dot:
      return detail::render_dot(seq);
  }
  throw InvalidArgument("unknown render format");
}

inline std::string render(const std::vector<StoneDiagram>& seq, std::string_view format) {
  return render(seq, parse_render_format(format));
}

}  // namespace tpro
