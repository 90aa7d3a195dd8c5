#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "gmkp/model.hpp"
#include "gmkp/rational.hpp"

namespace gmkp {

/// Fractional solution of the LP relaxation: z per group and the fractional
/// placement x[(knapsack, item)] of every item.
struct FractionalSolution {
  std::vector<Rational> z;
  std::map<std::pair<Index, Index>, Rational> x;
  /// Number of (item, knapsack) placement steps performed by the filler.
  std::size_t placement_steps = 0;

  Rational objective(const Instance& instance) const;
  /// Groups with 0 < z < 1.
  std::vector<Index> partial_groups() const;
  /// Weight placed on each knapsack, sum_j w_j x_ij.
  std::vector<Rational> knapsack_loads(const Instance& instance) const;
};

/// Group indices by non-increasing reward / total weight, ties by index.
/// Ratios are compared by exact cross-multiplication.
std::vector<Index> sort_groups(const Instance& instance);

/// Greedy LP solver: takes groups in sort_groups() order, sets
/// z = min(1, remaining budget / group weight) and pours the items into the
/// knapsacks one after the other, splitting items across knapsack borders.
/// At most one group ends up with 0 < z < 1.
///
/// When `total_capacity` exceeds the real total capacity the knapsacks run
/// out before the budget does; the overflow is placed on the last knapsack.
FractionalSolution greedy_lp(const Instance& instance, std::int64_t total_capacity);
inline FractionalSolution greedy_lp(const Instance& instance) { return greedy_lp(instance, instance.total_capacity()); }

}  // namespace gmkp
