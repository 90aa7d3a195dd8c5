#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gmkp/model.hpp"
#include "gmkp/pipeline.hpp"
#include "gmkp/subset_select.hpp"

namespace gmkp {

struct OracleOptions {
  /// Search nodes allowed across the whole call (packing checks included).
  std::uint64_t node_budget = 50'000'000;
};

/// Exact check whether all items of the chosen groups fit without exceeding
/// any capacity. Depth-first over items by decreasing weight; among knapsacks
/// with equal residual capacity only the lowest index is tried. Returns the
/// packing, or nullopt when none exists. Throws BudgetExceeded.
std::optional<Assignment> feasible_packing(const Instance& instance, const Selection& selection,
                                           const OracleOptions& options = {});

struct ExactGmkp {
  std::int64_t optimum = 0;
  SolveResult witness;
  std::uint64_t nodes = 0;
};

/// Optimal GMKP reward v* with a capacity-feasible witness. Branches over
/// groups by decreasing reward, include first, pruning on total capacity, the
/// remaining-reward bound and packing infeasibility of the partial choice.
/// Meant for small instances; throws BudgetExceeded.
ExactGmkp exact_gmkp(const Instance& instance, const OracleOptions& options = {});

/// Every 0/1 vector satisfying all rows, in increasing bitmask order
/// (group 0 is the lowest bit). Throws InputError above 20 groups.
std::vector<Selection> enumerate_feasible_z(const SelectionProblem& problem);

}  // namespace gmkp
