#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmkp/assign.hpp"
#include "gmkp/model.hpp"
#include "gmkp/subset_select.hpp"
#include "gmkp/variant.hpp"

namespace gmkp {

struct StageTimings {
  double selection_ms = 0;
  double assignment_ms = 0;
  double swap_opt_ms = 0;
  double total_ms() const { return selection_ms + assignment_ms + swap_opt_ms; }
};

/// Outcome of one algorithm run on one instance.
struct SolveResult {
  /// Variant name, or "best:<winner>" for the best-of driver.
  std::string algorithm;
  Variant variant;
  Selection selection;
  Assignment assignment;
  BiCriteriaMetrics metrics;
  StageTimings timings;
  bool swap_opt_applied = false;
  /// Right-hand side of the aggregate row used for selection.
  std::int64_t total_capacity = 0;
  LocalSearchStats local_search;
  std::uint64_t selection_nodes = 0;
};

struct RunOptions {
  bool swap_opt = false;
  /// Overrides the aggregate-row rhs (and the LP budget); defaults to sum c_i.
  std::optional<std::int64_t> total_capacity;
  ExactOptions exact;
};

/// Group selection step alone: greedy LP rounded up for Algorithm::LP,
/// exact solve of the corresponding selection problem otherwise.
Selection select_groups(const Instance& instance, const Variant& variant, std::int64_t total_capacity,
                        const ExactOptions& exact = {}, std::uint64_t* nodes = nullptr);

/// Selection, greedy assignment and (optionally) swap-optimal improvement.
/// The instance must be normalized. Budget errors propagate.
SolveResult run_algorithm(const Instance& instance, const Variant& variant, const RunOptions& options = {});

/// LP, KP, 2mKP, 3mKP and mKP_D with D = {c_max/2, ..., c_max/100}.
std::vector<Variant> default_best_variants(const Instance& instance);

/// Runs every variant and keeps the one with the smallest max_exceeded, then
/// the largest reward, then the earliest in the list.
SolveResult run_best(const Instance& instance, const std::vector<Variant>& variants, const RunOptions& options = {});

/// Some a >= 2 such that every value is a power of a (a^0 = 1 included).
std::optional<std::int64_t> common_power_base(std::span<const std::int64_t> values);

struct GuaranteeReport {
  /// False when the run used a non-default total capacity; nothing is checked.
  bool applicable = true;
  /// Guaranteed bound on max_exceeded / c_max.
  Rational beta;
  std::string beta_case;
  bool beta_holds = true;
  /// Set when an oracle reward was supplied.
  std::optional<bool> alpha_holds;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks reward >= v* and max_exceeded <= beta * c_max, with beta looked up
/// from the variant and the structure of the instance.
GuaranteeReport check_guarantees(const SolveResult& result, const Instance& instance,
                                 std::optional<std::int64_t> oracle_reward = std::nullopt);

}  // namespace gmkp
