#include "mapf/nrpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mapf/shortest_paths.hpp"

namespace mapf {

void Policy::set(int a, int b, double v) {
  v = std::clamp(v, kMin, kMax);
  value_[static_cast<size_t>(a) * dim_ + b] = v;
  weight_[static_cast<size_t>(a) * dim_ + b] = std::exp(v);
}

ItemDistances ItemDistances::from_nodes(const Graph& graph, const std::vector<NodeId>& starts,
                                        const std::vector<NodeId>& goals) {
  ItemDistances d;
  d.agent_count = static_cast<int>(starts.size());
  d.goal_count = static_cast<int>(goals.size());
  std::vector<NodeId> item_nodes;
  item_nodes.reserve(d.dim());
  item_nodes.push_back(starts[0]);
  for (NodeId g : goals) item_nodes.push_back(g);
  for (size_t j = 1; j < starts.size(); ++j) item_nodes.push_back(starts[j]);
  DistanceMatrix matrix = distance_matrix(graph, item_nodes, item_nodes);
  d.entries = std::move(matrix.entries);
  return d;
}

NrpaSolver::NrpaSolver(ItemDistances distances, std::uint64_t seed)
    : distances_(std::move(distances)), global_(distances_.dim()), rng_state_(seed) {
  if (distances_.agent_count < 1) throw std::invalid_argument("need at least one agent");
}

// splitmix64; seedable, documented, and identical on every platform.
double NrpaSolver::next_unit() {
  rng_state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = rng_state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

namespace {

struct ReplayState {
  std::vector<int> visits;
  int context = 0;      // current policy row
  int agent_index = 0;  // 0-based agent whose segment is being built
};

ReplayState make_initial_state(const ItemDistances& d) {
  ReplayState s;
  s.visits.assign(d.dim(), 0);
  for (int g = 1; g <= d.goal_count; ++g) s.visits[g] = 1;
  s.visits[0] = d.agent_count - 1;
  return s;
}

// Legal moves from the current context: unvisited reachable goals plus the
// separator token while separators remain.
void collect_moves(const ItemDistances& d, const ReplayState& s, std::vector<int>& moves) {
  moves.clear();
  if (s.visits[0] > 0) moves.push_back(0);
  for (int g = 1; g <= d.goal_count; ++g)
    if (s.visits[g] > 0 && d.at(s.context, g) != kInfCost) moves.push_back(g);
}

void advance(const ItemDistances& d, ReplayState& s, int item) {
  --s.visits[item];
  if (item == 0) {
    ++s.agent_index;
    s.context = d.goal_count + s.agent_index;  // start marker of the next agent
  } else {
    s.context = item;
  }
}

}  // namespace

Tour NrpaSolver::rollout(const Policy& policy) {
  const ItemDistances& d = distances_;
  const int k = d.agent_count;
  const int m = d.goal_count;
  Tour tour;
  tour.items.reserve(m + k - 1);

  ReplayState state = make_initial_state(d);
  std::vector<int> moves;
  Cost cost = 0, span = 0, makespan = 0;

  while (static_cast<int>(tour.items.size()) < m + k - 1) {
    collect_moves(d, state, moves);
    if (moves.empty())
      throw std::invalid_argument("rollout stuck: remaining goals unreachable from this agent");
    double total = 0.0;
    for (int mv : moves) total += policy.weight(state.context, mv);
    double u = next_unit() * total;
    int chosen = moves.back();
    for (int mv : moves) {
      u -= policy.weight(state.context, mv);
      if (u < 0.0) {
        chosen = mv;
        break;
      }
    }
    if (chosen == 0) {
      // New agent: close the current span and skip the connecting edge.
      makespan = std::max(makespan, span);
      span = 0;
    } else {
      Cost step = d.at(state.context, chosen);
      cost = saturating_add(cost, step);
      span = saturating_add(span, step);
    }
    tour.items.push_back(chosen);
    advance(d, state, chosen);
  }
  makespan = std::max(makespan, span);
  tour.score = static_cast<double>(makespan) + static_cast<double>(cost) / k;
  return tour;
}

template <typename OnStep>
void NrpaSolver::replay(const Tour& tour, OnStep&& on_step) const {
  ReplayState state = make_initial_state(distances_);
  std::vector<int> moves;
  for (int item : tour.items) {
    collect_moves(distances_, state, moves);
    on_step(state.context, item, moves);
    advance(distances_, state, item);
  }
}

void NrpaSolver::adapt(Policy& policy, const Policy& reference, const Tour& tour) const {
  const double inv_k = 1.0 / distances_.agent_count;
  replay(tour, [&](int context, int chosen, const std::vector<int>& moves) {
    const double lambda = context == 0 ? 1.0 : inv_k;
    policy.add(context, chosen, lambda);
    double z = 0.0;
    for (int mv : moves) z += reference.weight(context, mv);
    for (int mv : moves) policy.add(context, mv, -lambda * reference.weight(context, mv) / z);
  });
}

Tour NrpaSolver::search(const NrpaConfig& config) {
  if (config.level < 0 || config.iterations < 1)
    throw std::invalid_argument("nrpa search needs level >= 0 and iterations >= 1");
  stats_ = SearchStats{};
  stats_.min_rollout_score = std::numeric_limits<double>::infinity();
  level_policies_.assign(config.level + 1, Policy(distances_.dim()));

  std::chrono::steady_clock::time_point deadline;
  const bool limited = config.time_limit_seconds > 0.0;
  if (limited)
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(config.time_limit_seconds));

  Tour best = search_level(config.level, config, limited ? &deadline : nullptr);
  if (config.level == 0) stats_.best_trace.push_back(best.score);
  return best;
}

Tour NrpaSolver::search_level(int level, const NrpaConfig& config,
                              const std::chrono::steady_clock::time_point* deadline) {
  if (level == 0) {
    Tour tour = rollout(global_);
    ++stats_.rollouts;
    stats_.any_rollout = true;
    stats_.min_rollout_score = std::min(stats_.min_rollout_score, tour.score);
    return tour;
  }
  Tour best;
  best.score = std::numeric_limits<double>::infinity();
  level_policies_[level] = global_;
  for (int i = 0; i < config.iterations; ++i) {
    if (deadline && stats_.any_rollout && std::chrono::steady_clock::now() >= *deadline) break;
    Tour result = search_level(level - 1, config, deadline);
    if (result.score < best.score) {
      best = result;
      adapt(level_policies_[level], global_, best);
    }
    if (level == config.level) stats_.best_trace.push_back(best.score);
  }
  global_ = level_policies_[level];
  return best;
}

Policy seed_policy(const ItemDistances& distances) {
  const int dim = distances.dim();
  double sum = 0.0;
  long long finite_pairs = 0;
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      if (a == b) continue;
      Cost c = distances.at(a, b);
      if (c != kInfCost) {
        sum += static_cast<double>(c);
        ++finite_pairs;
      }
    }
  }
  const double mean = finite_pairs > 0 && sum > 0.0 ? sum / finite_pairs : 1.0;

  Policy policy(dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      Cost c = distances.at(a, b);
      if (c == kInfCost)
        policy.set(a, b, Policy::kMin);
      else
        policy.set(a, b, -static_cast<double>(c) / mean);
    }
  }
  return policy;
}

AgendaSet split_tour(const Tour& tour, int agent_count, const std::vector<NodeId>& goals) {
  const int m = static_cast<int>(goals.size());
  const int expected = m + agent_count - 1;
  if (static_cast<int>(tour.items.size()) != expected)
    throw std::invalid_argument("tour has " + std::to_string(tour.items.size()) +
                                " items, expected " + std::to_string(expected));
  AgendaSet agendas(agent_count);
  std::vector<char> seen(m + 1, 0);
  int agent = 0;
  for (int item : tour.items) {
    if (item == 0) {
      ++agent;
      if (agent >= agent_count) throw std::invalid_argument("tour has too many separators");
    } else {
      if (item < 1 || item > m || seen[item])
        throw std::invalid_argument("tour item " + std::to_string(item) + " invalid or repeated");
      seen[item] = 1;
      agendas[agent].push_back(goals[item - 1]);
    }
  }
  if (agent != agent_count - 1) throw std::invalid_argument("tour has too few separators");
  return agendas;
}

}  // namespace mapf
