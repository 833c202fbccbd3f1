#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tpro/error.hpp"
#include "tpro/graph.hpp"

namespace tpro {

// Labels live in {1..n}; n + 1 wraps to 1.
using Label = std::uint32_t;

inline Label next_label(Label l, std::size_t n) { return static_cast<Label>(l % n + 1); }
inline Label prev_label(Label l, std::size_t n) {
  return l == 1 ? static_cast<Label>(n) : l - 1;
}

// Bijection vertices -> {1..n}, kept together with its inverse.
class Labeling {
 public:
  Labeling() : Labeling(identity(1)) {}

  static Labeling identity(std::size_t n) {
    std::vector<Label> one_line(n);
    std::iota(one_line.begin(), one_line.end(), Label{1});
    return Labeling(std::move(one_line));
  }

  // one_line[v] is the label of vertex v.
  explicit Labeling(std::vector<Label> one_line) : label_(std::move(one_line)) {
    const std::size_t n = label_.size();
    if (n == 0) throw InvalidArgument("labeling must be nonempty");
    vertex_.assign(n, kNone);
    for (Vertex v = 0; v < n; ++v) {
      const Label l = label_[v];
      if (l < 1 || l > n) {
        throw InvalidArgument("label " + std::to_string(l) + " outside 1.." + std::to_string(n));
      }
      if (vertex_[l - 1] != kNone) throw InvalidArgument("label " + std::to_string(l) + " repeated");
      vertex_[l - 1] = v;
    }
  }

  // One-line notation. Up to 9 vertices the digits may be written without
  // separators ("4123"); otherwise labels are separated by commas or spaces.
  static Labeling parse(std::string_view text) {
    std::vector<Label> labels;
    const bool separated = text.find_first_of(", ") != std::string_view::npos;
    if (!separated) {
      for (char c : text) {
        if (c < '1' || c > '9') throw InvalidArgument("bad labeling character '" + std::string(1, c) + "'");
        labels.push_back(static_cast<Label>(c - '0'));
      }
    } else {
      std::size_t pos = 0;
      while (pos < text.size()) {
        const std::size_t end = text.find_first_of(", ", pos);
        const auto token = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        if (!token.empty()) {
          Label value = 0;
          for (char c : token) {
            if (c < '0' || c > '9') throw InvalidArgument("bad labeling token '" + std::string(token) + "'");
            value = value * 10 + static_cast<Label>(c - '0');
          }
          labels.push_back(value);
        }
        if (end == std::string_view::npos) break;
        pos = end + 1;
      }
    }
    return Labeling(std::move(labels));
  }

  std::size_t size() const { return label_.size(); }
  Label label_of(Vertex v) const { return label_[v]; }
  Vertex vertex_of(Label l) const { return vertex_[l - 1]; }
  const std::vector<Label>& one_line() const { return label_; }

  std::string to_string() const {
    std::string out;
    const bool compact = label_.size() <= 9;
    for (std::size_t v = 0; v < label_.size(); ++v) {
      if (!compact && v > 0) out += ',';
      out += std::to_string(label_[v]);
    }
    return out;
  }

  // (a b) o sigma: the vertices carrying labels a and b trade labels.
  void swap_labels(Label a, Label b) {
    const Vertex va = vertex_[a - 1];
    const Vertex vb = vertex_[b - 1];
    label_[va] = b;
    label_[vb] = a;
    vertex_[a - 1] = vb;
    vertex_[b - 1] = va;
  }

  // Every label moves to its successor.
  void shift() {
    const std::size_t n = label_.size();
    for (auto& l : label_) l = next_label(l, n);
    std::rotate(vertex_.rbegin(), vertex_.rbegin() + 1, vertex_.rend());
  }

  bool operator==(const Labeling& other) const { return label_ == other.label_; }

 private:
  static constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<Label> label_;
  std::vector<Vertex> vertex_;
};

struct State {
  Labeling labeling;
  Label active = 1;

  State() = default;
  State(Labeling l, Label i) : labeling(std::move(l)), active(i) {
    if (active < 1 || active > labeling.size()) {
      throw InvalidArgument("active label " + std::to_string(active) + " outside 1.." +
                            std::to_string(labeling.size()));
    }
  }

  static State parse(std::string_view one_line, Label active) {
    return State(Labeling::parse(one_line), active);
  }

  std::size_t size() const { return labeling.size(); }
  // Vertex currently carrying the active label.
  Vertex coin() const { return labeling.vertex_of(active); }

  bool operator==(const State&) const = default;
};

inline void check_state_for(const SimpleGraph& g, const State& s) {
  if (s.size() != g.vertex_count()) {
    throw InvalidArgument("state has " + std::to_string(s.size()) + " labels but graph has " +
                          std::to_string(g.vertex_count()) + " vertices");
  }
}

// In-place toric promotion step. Returns true when labels i and i+1 were
// swapped.
inline bool advance(const SimpleGraph& g, State& s) {
  const std::size_t n = s.size();
  const Label i = s.active;
  const Label j = next_label(i, n);
  const bool swap = i != j && !g.adjacent(s.labeling.vertex_of(i), s.labeling.vertex_of(j));
  if (swap) s.labeling.swap_labels(i, j);
  s.active = j;
  return swap;
}

// In-place inverse step. The pair of vertices carrying labels i-1, i is the
// same before and after a swap, so the adjacency test is unchanged.
inline void retreat(const SimpleGraph& g, State& s) {
  const std::size_t n = s.size();
  const Label j = s.active;
  const Label i = prev_label(j, n);
  if (!g.adjacent(s.labeling.vertex_of(i), s.labeling.vertex_of(j))) s.labeling.swap_labels(i, j);
  s.active = i;
}

inline State tpro_step(const SimpleGraph& g, State s) {
  advance(g, s);
  return s;
}

inline State tpro_inverse_step(const SimpleGraph& g, State s) {
  retreat(g, s);
  return s;
}

inline State cyc(State s) {
  s.labeling.shift();
  s.active = next_label(s.active, s.size());
  return s;
}

// A step at which the coin traverses a monitored edge: it sits on `from`
// at time `time` and on `to` at time `time + 1`.
struct CrossingEvent {
  std::uint64_t time = 0;
  Vertex from = 0;
  Vertex to = 0;

  bool operator==(const CrossingEvent&) const = default;
};

struct OrbitReport {
  std::uint64_t length = 0;
  State start;
  std::vector<CrossingEvent> events;
};

inline std::uint64_t factorial_times_n(std::size_t n) {
  std::uint64_t f = n;
  for (std::size_t k = 2; k <= n; ++k) {
    if (f > UINT64_MAX / k) return UINT64_MAX;
    f *= k;
  }
  return f;
}

// Default cap n!*n + 1. Above 10 vertices an explicit cap is required.
inline std::uint64_t default_orbit_cap(std::size_t n) {
  if (n > 10) {
    throw InvalidArgument("orbit cap must be given explicitly above 10 vertices");
  }
  return factorial_times_n(n) + 1;
}

// Iterates until the start state recurs. TPro is a bijection, so the first
// repeated state is the start itself and only the start is compared.
inline OrbitReport orbit_length(const SimpleGraph& g, const State& start,
                                std::optional<std::uint64_t> cap = std::nullopt) {
  check_state_for(g, start);
  const std::uint64_t limit = cap ? *cap : default_orbit_cap(start.size());
  State s = start;
  std::uint64_t steps = 0;
  do {
    advance(g, s);
    if (++steps > limit) {
      throw CapExceeded("orbit did not close within " + std::to_string(limit) + " steps");
    }
  } while (!(s.active == start.active && s.labeling == start.labeling));
  return {steps, start, {}};
}

// The orbit as a sequence start, TPro(start), ..., TPro^{L-1}(start).
inline std::vector<State> orbit_states(const SimpleGraph& g, const State& start,
                                       std::optional<std::uint64_t> cap = std::nullopt) {
  check_state_for(g, start);
  const std::uint64_t limit = cap ? *cap : default_orbit_cap(start.size());
  std::vector<State> seq{start};
  State s = start;
  while (true) {
    advance(g, s);
    if (s == start) break;
    if (seq.size() >= limit) throw CapExceeded("orbit did not close within cap");
    seq.push_back(s);
  }
  return seq;
}

template <class Rng>
State random_state(std::size_t n, Rng& rng) {
  std::vector<Label> labels(n);
  std::iota(labels.begin(), labels.end(), Label{1});
  std::shuffle(labels.begin(), labels.end(), rng);
  std::uniform_int_distribution<Label> pick(1, static_cast<Label>(n));
  const Label active = pick(rng);
  return State(Labeling(std::move(labels)), active);
}

// The state on relabel(g, perm) that mirrors s on g.
inline State relabel_state(const State& s, const std::vector<Vertex>& perm) {
  std::vector<Label> labels(s.size());
  for (Vertex v = 0; v < s.size(); ++v) labels[perm.at(v)] = s.labeling.label_of(v);
  return State(Labeling(std::move(labels)), s.active);
}

}  // namespace tpro
