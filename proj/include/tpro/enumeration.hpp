#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "tpro/dynamics.hpp"
#include "tpro/error.hpp"
#include "tpro/graph.hpp"

namespace tpro {

// Largest vertex count for which exhaustive runs and rank-indexed tables
// are offered.
inline constexpr std::size_t kMaxExhaustiveVertices = 9;
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;
inline constexpr std::uint64_t kDefaultSeed = 20230101;

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// ---------------------------------------------------------------------------
// Lehmer code: lexicographic rank of a one-line permutation of {1..n}.

inline std::uint64_t lehmer_rank(const std::vector<Label>& one_line) {
  const std::size_t n = one_line.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller_after = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller_after += one_line[j] < one_line[i];
    rank = rank * (n - i) + smaller_after;
  }
  return rank;
}

inline std::vector<Label> lehmer_unrank(std::uint64_t rank, std::size_t n) {
  if (n > 20 || rank >= factorial(n)) throw InvalidArgument("permutation rank out of range");
  std::vector<std::uint64_t> digits(n);
  for (std::size_t i = n; i-- > 0;) {
    const std::uint64_t base = n - i;
    digits[i] = rank % base;
    rank /= base;
  }
  std::vector<Label> pool(n);
  for (std::size_t k = 0; k < n; ++k) pool[k] = static_cast<Label>(k + 1);
  std::vector<Label> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = pool[digits[i]];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
  }
  return out;
}

// Flat index of a state: permutation rank * n + (active - 1).
inline std::uint64_t state_index(const State& s) {
  return lehmer_rank(s.labeling.one_line()) * s.size() + (s.active - 1);
}

inline State state_at(std::uint64_t index, std::size_t n) {
  return State(Labeling(lehmer_unrank(index / n, n)), static_cast<Label>(index % n + 1));
}

// ---------------------------------------------------------------------------
// Plans

struct EnumerationPlan {
  enum class Mode { exhaustive, sampled };

  Mode mode = Mode::exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = kDefaultBudget;  // max total TPro steps
  std::size_t partition = 1;              // work shards
  std::size_t jobs = 0;                   // worker threads; 0 = hardware concurrency

  static EnumerationPlan exhaustive(std::size_t shards = 1) {
    EnumerationPlan p;
    p.partition = shards;
    return p;
  }
  static EnumerationPlan sampled(std::uint64_t count, std::uint64_t seed) {
    EnumerationPlan p;
    p.mode = Mode::sampled;
    p.sample_count = count;
    p.seed = seed;
    return p;
  }
};

inline std::string to_string(EnumerationPlan::Mode m) {
  return m == EnumerationPlan::Mode::exhaustive ? "exhaustive" : "sampled";
}

inline void check_exhaustive(std::size_t n, const EnumerationPlan& plan) {
  if (n > kMaxExhaustiveVertices) {
    throw BudgetExceeded("exhaustive enumeration is limited to " +
                         std::to_string(kMaxExhaustiveVertices) + " vertices; use sampled mode");
  }
  if (factorial_times_n(n) > plan.budget) {
    throw BudgetExceeded(std::to_string(factorial_times_n(n)) + " states exceed budget of " +
                         std::to_string(plan.budget) + " steps");
  }
}

// Exhaustive: every (permutation, active) pair once, permutations in
// lexicographic order, then active label ascending. Sampled: `sample_count`
// seeded draws, duplicates allowed.
inline void for_each_state(std::size_t n, const EnumerationPlan& plan,
                           const std::function<void(const State&)>& visit) {
  if (plan.mode == EnumerationPlan::Mode::sampled) {
    if (plan.sample_count > plan.budget) throw BudgetExceeded("sample count exceeds budget");
    std::mt19937_64 rng(plan.seed);
    for (std::uint64_t k = 0; k < plan.sample_count; ++k) visit(random_state(n, rng));
    return;
  }
  check_exhaustive(n, plan);
  std::vector<Label> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = static_cast<Label>(k + 1);
  do {
    Labeling l(perm);
    for (Label i = 1; i <= n; ++i) visit(State(l, i));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

inline std::vector<State> enumerate_states(std::size_t n, const EnumerationPlan& plan) {
  std::vector<State> out;
  for_each_state(n, plan, [&](const State& s) { out.push_back(s); });
  return out;
}

// ---------------------------------------------------------------------------
// Sharded execution

inline std::size_t resolve_jobs(std::size_t jobs) {
  if (jobs != 0) return jobs;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Runs work(shard) for shard in [0, shards) on up to `jobs` threads.
inline void run_shards(std::size_t shards, std::size_t jobs, const std::function<void(std::size_t)>& work) {
  const std::size_t workers = std::min(resolve_jobs(jobs), shards);
  if (workers <= 1) {
    for (std::size_t s = 0; s < shards; ++s) work(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < shards; s = next++) {
        try {
          work(s);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Permutation-rank range [begin, end) owned by a shard.
struct RankRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

inline RankRange shard_range(std::size_t n, std::size_t shard, std::size_t shards) {
  const std::uint64_t total = factorial(n);
  return {total * shard / shards, total * (shard + 1) / shards};
}

// Global step accounting shared by shards.
class StepBudget {
 public:
  explicit StepBudget(std::uint64_t limit) : limit_(limit) {}
  // False once the limit has been passed.
  bool charge(std::uint64_t steps) {
    const std::uint64_t total = used_.fetch_add(steps) + steps;
    if (total > limit_) exhausted_ = true;
    return !exhausted_;
  }
  bool exhausted() const { return exhausted_; }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> exhausted_{false};
};

namespace detail {

// Walks every orbit touching the shard's rank range once. For each orbit,
// on_orbit(length, in_range_indices) receives the local indices of the orbit's
// states that fall inside the range. Orbits crossing shard boundaries are
// walked once per shard they touch; each shard only records its own states,
// so shards never share writes.
inline void walk_shard(const SimpleGraph& g, RankRange range, StepBudget& budget,
                       const std::function<void(std::uint64_t, const std::vector<std::uint64_t>&)>& on_orbit) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t span = (range.end - range.begin) * n;
  std::vector<bool> visited(span, false);
  std::vector<std::uint64_t> local;
  std::vector<Label> perm = range.begin < range.end ? lehmer_unrank(range.begin, n) : std::vector<Label>{};
  for (std::uint64_t r = range.begin; r < range.end; ++r) {
    const Labeling lab(perm);
    for (Label i = 1; i <= n; ++i) {
      const std::uint64_t start_local = (r - range.begin) * n + (i - 1);
      if (visited[start_local]) continue;
      const State start(lab, i);
      State s = start;
      std::uint64_t length = 0;
      local.clear();
      do {
        const std::uint64_t rank = lehmer_rank(s.labeling.one_line());
        if (rank >= range.begin && rank < range.end) {
          const std::uint64_t idx = (rank - range.begin) * n + (s.active - 1);
          visited[idx] = true;
          local.push_back(idx);
        }
        advance(g, s);
        ++length;
        if ((length & 0xFFFF) == 0 && !budget.charge(0x10000)) return;
      } while (!(s.active == start.active && s.labeling == start.labeling));
      if (!budget.charge(length & 0xFFFF)) return;
      on_orbit(length, local);
    }
    std::next_permutation(perm.begin(), perm.end());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Census

struct OrbitCensus {
  // orbit length -> number of states lying on orbits of that length
  std::map<std::uint64_t, std::uint64_t> entries;
  std::uint64_t total_states = 0;
  std::uint64_t steps = 0;
  bool complete = true;  // false: budget ran out, counts are partial
  EnumerationPlan::Mode mode = EnumerationPlan::Mode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;

  std::uint64_t orbit_count(std::uint64_t length) const {
    auto it = entries.find(length);
    return it == entries.end() ? 0 : it->second / length;
  }
  bool operator==(const OrbitCensus&) const = default;
};

inline OrbitCensus census(const SimpleGraph& g, const EnumerationPlan& plan) {
  const std::size_t n = g.vertex_count();
  OrbitCensus out;
  out.mode = plan.mode;
  out.seed = plan.seed;
  out.budget = plan.budget;
  StepBudget budget(plan.budget);

  if (plan.mode == EnumerationPlan::Mode::sampled) {
    const std::size_t shards = std::max<std::size_t>(1, plan.partition);
    std::vector<State> samples = enumerate_states(n, plan);
    std::vector<std::map<std::uint64_t, std::uint64_t>> parts(shards);
    std::vector<std::uint64_t> done(shards, 0);
    run_shards(shards, plan.jobs, [&](std::size_t shard) {
      const std::size_t lo = samples.size() * shard / shards;
      const std::size_t hi = samples.size() * (shard + 1) / shards;
      for (std::size_t k = lo; k < hi; ++k) {
        if (budget.exhausted()) return;
        const std::uint64_t remaining = plan.budget > budget.used() ? plan.budget - budget.used() : 0;
        std::uint64_t len = 0;
        try {
          len = orbit_length(g, samples[k], remaining).length;
        } catch (const CapExceeded&) {
          budget.charge(remaining + 1);
          return;
        }
        if (!budget.charge(len)) return;
        ++parts[shard][len];
        ++done[shard];
      }
    });
    for (std::size_t s = 0; s < shards; ++s) {
      for (auto [len, c] : parts[s]) out.entries[len] += c;
      out.total_states += done[s];
    }
    out.complete = !budget.exhausted();
    out.steps = budget.used();
    return out;
  }

  check_exhaustive(n, plan);
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::uint64_t>(plan.partition, factorial(n)));
  std::vector<std::map<std::uint64_t, std::uint64_t>> parts(shards);
  run_shards(shards, plan.jobs, [&](std::size_t shard) {
    detail::walk_shard(g, shard_range(n, shard, shards), budget,
                       [&](std::uint64_t length, const std::vector<std::uint64_t>& local) {
                         parts[shard][length] += local.size();
                       });
  });
  for (const auto& part : parts) {
    for (auto [len, c] : part) {
      out.entries[len] += c;
      out.total_states += c;
    }
  }
  out.complete = !budget.exhausted();
  out.steps = budget.used();
  return out;
}

// Orbit length of every state, indexed by state_index. Exhaustive only.
inline std::vector<std::uint32_t> orbit_length_table(const SimpleGraph& g, const EnumerationPlan& plan) {
  const std::size_t n = g.vertex_count();
  check_exhaustive(n, plan);
  std::vector<std::uint32_t> table(factorial_times_n(n), 0);
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::uint64_t>(plan.partition, factorial(n)));
  StepBudget budget(plan.budget);
  run_shards(shards, plan.jobs, [&](std::size_t shard) {
    const RankRange range = shard_range(n, shard, shards);
    const std::uint64_t base = range.begin * n;
    detail::walk_shard(g, range, budget, [&](std::uint64_t length, const std::vector<std::uint64_t>& local) {
      for (std::uint64_t idx : local) table[base + idx] = static_cast<std::uint32_t>(length);
    });
  });
  if (budget.exhausted()) {
    throw BudgetExceeded("orbit table needed more than " + std::to_string(plan.budget) + " steps");
  }
  return table;
}

}  // namespace tpro
