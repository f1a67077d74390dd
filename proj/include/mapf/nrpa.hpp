#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "mapf/graph.hpp"
#include "mapf/types.hpp"

namespace mapf {

// Preference matrix over tour items. Item 0 is the virtual root/separator
// token, items 1..m are goals, items m+1..m+k-1 mark the starts of agents
// 2..k. Values clamp to [kMin, kMax] on write so e^value stays finite; the
// exponentiated weights are cached alongside.
class Policy {
 public:
  static constexpr double kMin = -20.0;
  static constexpr double kMax = 20.0;

  Policy() = default;
  explicit Policy(int dim)
      : dim_(dim),
        value_(static_cast<size_t>(dim) * dim, 0.0),
        weight_(static_cast<size_t>(dim) * dim, 1.0) {}

  int dim() const { return dim_; }
  double at(int a, int b) const { return value_[static_cast<size_t>(a) * dim_ + b]; }
  double weight(int a, int b) const { return weight_[static_cast<size_t>(a) * dim_ + b]; }
  void set(int a, int b, double v);
  void add(int a, int b, double delta) { set(a, b, at(a, b) + delta); }

 private:
  int dim_ = 0;
  std::vector<double> value_;
  std::vector<double> weight_;
};

// A combined open tour for all agents: every goal item exactly once and k-1
// separator tokens splitting it into per-agent segments.
struct Tour {
  std::vector<int> items;
  double score = 0.0;
};

// Per-agent ordered goal agendas (a partition of the goal set).
using AgendaSet = std::vector<std::vector<NodeId>>;

// Item-indexed square distance table, dim = m+k. Row/column order matches the
// Policy item encoding.
struct ItemDistances {
  int agent_count = 0;
  int goal_count = 0;
  std::vector<Cost> entries;

  int dim() const { return agent_count + goal_count; }
  Cost at(int a, int b) const { return entries[static_cast<size_t>(a) * dim() + b]; }
  Cost& at(int a, int b) { return entries[static_cast<size_t>(a) * dim() + b]; }

  static ItemDistances from_nodes(const Graph& graph, const std::vector<NodeId>& starts,
                                  const std::vector<NodeId>& goals);
};

struct NrpaConfig {
  int level = 3;
  int iterations = 30;
  double time_limit_seconds = 0.0;  // 0 = no limit
};

struct SearchStats {
  std::vector<double> best_trace;  // best score after each top-level iteration
  long long rollouts = 0;
  double min_rollout_score = 0.0;
  bool any_rollout = false;
};

// Nested rollout policy adaptation over the item space. A solver instance is
// single-threaded; run independent instances (distinct seeds) for parallel
// restarts.
class NrpaSolver {
 public:
  NrpaSolver(ItemDistances distances, std::uint64_t seed);

  void set_global(Policy policy) { global_ = std::move(policy); }
  const Policy& global() const { return global_; }

  // One softmax-guided construction; always yields a valid tour.
  Tour rollout(const Policy& policy);

  // Reinforces the tour's moves in `policy`: +lambda on each chosen entry,
  // -lambda * softmax share (weights from `reference`) on every legal move.
  // lambda is 1 at the root item and 1/k elsewhere.
  void adapt(Policy& policy, const Policy& reference, const Tour& tour) const;

  // Level-L search running `iterations` recursive calls per level, adapting
  // the level-local policy on improvement. Anytime: the best score is
  // non-increasing across iterations at every level.
  Tour search(const NrpaConfig& config);

  const SearchStats& stats() const { return stats_; }

 private:
  template <typename OnStep>
  void replay(const Tour& tour, OnStep&& on_step) const;
  Tour search_level(int level, const NrpaConfig& config,
                    const std::chrono::steady_clock::time_point* deadline);
  double next_unit();

  ItemDistances distances_;
  Policy global_;
  std::vector<Policy> level_policies_;
  std::uint64_t rng_state_;
  SearchStats stats_;
};

// Distance-biased starting policy: entry (a, b) = -d(a, b) / mean finite
// off-diagonal distance; unreachable pairs get the clamp minimum.
Policy seed_policy(const ItemDistances& distances);

// Segment following the i-th separator belongs to agent i+1; goal items map
// back to graph nodes through `goals`.
AgendaSet split_tour(const Tour& tour, int agent_count, const std::vector<NodeId>& goals);

}  // namespace mapf
