#pragma once

#include <stdexcept>
#include <vector>

#include "mapf/types.hpp"

namespace mapf {

// No perfect matching over finite entries exists.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Square agent x goal cost matrix; kInfCost marks unreachable pairs.
struct CostMatrix {
  int k = 0;
  std::vector<Cost> costs;  // row-major

  CostMatrix() = default;
  explicit CostMatrix(int size) : k(size), costs(static_cast<size_t>(size) * size, 0) {}
  CostMatrix(int size, std::vector<Cost> values) : k(size), costs(std::move(values)) {}

  Cost at(int i, int j) const { return costs[static_cast<size_t>(i) * k + j]; }
  Cost& at(int i, int j) { return costs[static_cast<size_t>(i) * k + j]; }
};

struct Assignment {
  std::vector<int> perm;  // agent i -> goal perm[i]
  Cost total = 0;
  Cost max_entry = 0;
};

// Minimum sum-of-cost assignment by shortest augmenting paths with dual
// potentials, O(k^3). Deterministic for a given matrix; throws
// InfeasibleError when no finite perfect matching exists.
Assignment solve_sum(const CostMatrix& costs);

// Minimum max-entry assignment: binary search over the distinct finite
// entries with a Hopcroft-Karp feasibility test per threshold.
Assignment solve_bottleneck(const CostMatrix& costs);

}  // namespace mapf
