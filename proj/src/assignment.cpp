#include "mapf/assignment.hpp"

#include <algorithm>
#include <string>

namespace mapf {
namespace {

Cost max_finite_entry(const CostMatrix& costs) {
  Cost m = 0;
  for (Cost c : costs.costs)
    if (c != kInfCost) m = std::max(m, c);
  return m;
}

void require_feasible_lines(const CostMatrix& costs) {
  const int k = costs.k;
  for (int i = 0; i < k; ++i) {
    bool any = false;
    for (int j = 0; j < k && !any; ++j) any = costs.at(i, j) != kInfCost;
    if (!any) throw InfeasibleError("row " + std::to_string(i) + " has no finite entry");
  }
  for (int j = 0; j < k; ++j) {
    bool any = false;
    for (int i = 0; i < k && !any; ++i) any = costs.at(i, j) != kInfCost;
    if (!any) throw InfeasibleError("column " + std::to_string(j) + " has no finite entry");
  }
}

Assignment finish(const CostMatrix& costs, std::vector<int> perm) {
  Assignment a;
  a.perm = std::move(perm);
  for (int i = 0; i < costs.k; ++i) {
    Cost c = costs.at(i, a.perm[i]);
    if (c == kInfCost) throw InfeasibleError("no finite perfect matching exists");
    a.total += c;
    a.max_entry = std::max(a.max_entry, c);
  }
  return a;
}

// Perfect-matching test restricted to entries <= threshold (Hopcroft-Karp).
// match_col[j] receives the matched row on success.
bool perfect_matching_within(const CostMatrix& costs, Cost threshold,
                             std::vector<int>& match_col) {
  const int k = costs.k;
  std::vector<int> match_row(k, -1);
  match_col.assign(k, -1);
  std::vector<int> layer(k);
  std::vector<int> queue(k);

  auto bfs = [&]() {
    int head = 0, tail = 0;
    for (int i = 0; i < k; ++i) {
      if (match_row[i] == -1) {
        layer[i] = 0;
        queue[tail++] = i;
      } else {
        layer[i] = -1;
      }
    }
    bool reachable_free = false;
    while (head < tail) {
      int i = queue[head++];
      for (int j = 0; j < k; ++j) {
        if (costs.at(i, j) > threshold) continue;
        int next = match_col[j];
        if (next == -1)
          reachable_free = true;
        else if (layer[next] == -1) {
          layer[next] = layer[i] + 1;
          queue[tail++] = next;
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> dfs = [&](int i) {
    for (int j = 0; j < k; ++j) {
      if (costs.at(i, j) > threshold) continue;
      int next = match_col[j];
      if (next == -1 || (layer[next] == layer[i] + 1 && dfs(next))) {
        match_row[i] = j;
        match_col[j] = i;
        return true;
      }
    }
    layer[i] = -1;
    return false;
  };

  int matched = 0;
  while (bfs()) {
    for (int i = 0; i < k; ++i)
      if (match_row[i] == -1 && dfs(i)) ++matched;
  }
  return matched == k;
}

}  // namespace

Assignment solve_sum(const CostMatrix& costs) {
  const int k = costs.k;
  if (k <= 0) throw std::invalid_argument("empty cost matrix");
  require_feasible_lines(costs);

  // Infinity becomes a finite value exceeding any feasible total, so it is
  // selected only when no finite perfect matching exists; finish() rejects
  // that case.
  const Cost max_finite = max_finite_entry(costs);
  if (max_finite > 0 && max_finite > (kInfCost - 1) / (static_cast<Cost>(k) + 1) / (k + 1))
    throw std::invalid_argument("cost entries too large for exact arithmetic");
  const Cost big = max_finite * k + 1;
  auto entry = [&](int i, int j) {
    Cost c = costs.at(i, j);
    return c == kInfCost ? big : c;
  };

  // Shortest augmenting paths with dual potentials; column 0 is virtual.
  std::vector<Cost> u(k + 1, 0), v(k + 1, 0), min_cost(k + 1);
  std::vector<int> matched_row(k + 1, 0), predecessor(k + 1, 0);
  for (int row = 1; row <= k; ++row) {
    matched_row[0] = row;
    int j0 = 0;
    min_cost.assign(k + 1, kInfCost);
    std::vector<char> used(k + 1, false);
    do {
      used[j0] = true;
      const int i0 = matched_row[j0];
      Cost delta = kInfCost;
      int j1 = -1;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        Cost reduced = entry(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < min_cost[j]) {
          min_cost[j] = reduced;
          predecessor[j] = j0;
        }
        if (min_cost[j] < delta) {
          delta = min_cost[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[matched_row[j]] += delta;
          v[j] -= delta;
        } else {
          min_cost[j] -= delta;
        }
      }
      j0 = j1;
    } while (matched_row[j0] != 0);
    do {
      int j1 = predecessor[j0];
      matched_row[j0] = matched_row[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> perm(k);
  for (int j = 1; j <= k; ++j) perm[matched_row[j] - 1] = j - 1;
  return finish(costs, std::move(perm));
}

Assignment solve_bottleneck(const CostMatrix& costs) {
  const int k = costs.k;
  if (k <= 0) throw std::invalid_argument("empty cost matrix");
  require_feasible_lines(costs);

  std::vector<Cost> values;
  values.reserve(costs.costs.size());
  for (Cost c : costs.costs)
    if (c != kInfCost) values.push_back(c);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<int> match_col;
  if (!perfect_matching_within(costs, values.back(), match_col))
    throw InfeasibleError("no finite perfect matching exists");

  int lo = 0, hi = static_cast<int>(values.size()) - 1;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    std::vector<int> probe;
    if (perfect_matching_within(costs, values[mid], probe)) {
      hi = mid;
      match_col = std::move(probe);
    } else {
      lo = mid + 1;
    }
  }

  std::vector<int> perm(k);
  for (int j = 0; j < k; ++j) perm[match_col[j]] = j;
  return finish(costs, std::move(perm));
}

}  // namespace mapf
