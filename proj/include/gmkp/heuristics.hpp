#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmkp/pipeline.hpp"

namespace gmkp {

struct BinarySearchOptions {
  bool swap_opt = true;
  /// Stop after this many probes and return the incumbent.
  std::optional<std::uint64_t> max_probes;
  ExactOptions exact;
};

struct BinarySearchResult {
  SolveResult best;
  std::uint64_t probes = 0;
  bool budget_exhausted = false;
  /// Non-empty when a probe failed and the incumbent was returned early.
  std::string warning;
};

/// Binary search over the aggregate-row rhs in [0, sum c_i]: a probe whose
/// (swap-optimized) solution fits every knapsack moves the lower end up,
/// otherwise the upper end moves down. Keeps the highest-reward feasible
/// probe; starts from the empty solution.
BinarySearchResult binary_search_feasible(const Instance& instance, const Variant& variant,
                                          const BinarySearchOptions& options = {});

struct SweepEntry {
  Rational factor;
  std::int64_t total_capacity = 0;
  std::optional<SolveResult> result;
  std::string error;
};

/// The eleven factors 3/4, 4/5, ..., 5/4.
std::vector<Rational> default_sweep_factors();

/// One run per factor with total capacity floor(factor * sum c_i). A failing
/// factor is recorded in its entry and does not affect the others. Factors
/// must be positive (InputError otherwise).
std::vector<SweepEntry> capacity_sweep(const Instance& instance, const Variant& variant,
                                       const std::vector<Rational>& factors, bool swap_opt = true,
                                       const ExactOptions& exact = {});

struct ObjectivePoint {
  std::int64_t reward = 0;
  std::int64_t max_exceeded = 0;
};

/// Indices of the non-dominated points (reward up, max_exceeded down), in
/// order of increasing max_exceeded; ties keep input order.
std::vector<Index> pareto_indices(const std::vector<ObjectivePoint>& points);

std::vector<SolveResult> pareto_frontier(const std::vector<SolveResult>& results);

}  // namespace gmkp
