#pragma once

#include <cstdint>

#include "gmkp/model.hpp"

namespace gmkp {

/// Places the items of the chosen groups, heaviest first (ties by item index),
/// each on the knapsack with the smallest load - capacity (ties by knapsack
/// index). Equivalent to list scheduling with release times c_max - c_i.
Assignment greedy_assign(const Instance& instance, const Selection& selection);

/// Potential minimized by the local search: sum_i (load_i - c_i + c_max)^2.
std::int64_t assignment_potential(const Instance& instance, const Assignment& assignment);

struct LocalSearchStats {
  std::uint64_t jumps = 0;
  std::uint64_t swaps = 0;
  std::uint64_t step_guard = 0;
  std::uint64_t steps() const { return jumps + swaps; }
};

/// A jump (one item to another knapsack) or swap (two items on different
/// knapsacks exchange places) is improving iff it strictly lowers
/// assignment_potential() and does not raise the maximum overload.
bool is_improving_jump(const Instance& instance, const Assignment& assignment, Index item, Index target);
bool is_improving_swap(const Instance& instance, const Assignment& assignment, Index a, Index b);

/// Applies the first improving move of a fixed sweep (all jumps by
/// (item, target), then all swaps by (item, item)) until none is left.
/// Throws InvariantViolation if the step guard n^2 * m * potential is hit.
Assignment swap_optimal(const Instance& instance, Assignment assignment, LocalSearchStats* stats = nullptr);

}  // namespace gmkp
