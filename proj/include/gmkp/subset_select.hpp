#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmkp/model.hpp"
#include "gmkp/rational.hpp"
#include "gmkp/variant.hpp"

namespace gmkp {

/// Largest integer strictly below y / d, i.e. how many pieces slightly heavier
/// than d fit into y. For d = a/b this is floor((y*b - 1) / a).
std::int64_t f_d(std::int64_t y, const Rational& d);

enum class RowKind { Aggregate, Threshold, Floor };

/// Where a selection-problem row comes from.
struct RowTag {
  RowKind kind = RowKind::Aggregate;
  /// Threshold d for Threshold/Floor rows.
  Rational d;
  std::string str() const;
  friend bool operator==(const RowTag&, const RowTag&) = default;
};

struct ProblemRow {
  std::vector<std::int64_t> coeffs;  // one per group
  std::int64_t rhs = 0;
  RowTag tag;
};

/// 0/1 group-selection problem: maximize sum p_l z_l subject to every row.
/// Row 0 is always the aggregate weight row.
struct SelectionProblem {
  std::vector<std::int64_t> group_rewards;
  std::vector<ProblemRow> rows;

  Index num_groups() const { return group_rewards.size(); }
  bool feasible(const Selection& selection) const;
  std::int64_t value(const Selection& selection) const;
};

/// Thresholds c_i / q inside (0, w_max) that can change the feasible set of
/// the generalized row family. Only q <= c_i * m are listed: for integer data
/// any smaller threshold gives a row that is implied by the aggregate row or
/// repeats (modulo c_i) a row already in the set.
std::vector<Rational> canonical_D(const Instance& instance);

/// Builds the selection problem for `variant` (LP is rejected). Rows with all
/// zero coefficients are dropped and identical rows are merged.
SelectionProblem build_problem(const Instance& instance, const Variant& variant, std::int64_t total_capacity);
inline SelectionProblem build_problem(const Instance& instance, const Variant& variant) {
  return build_problem(instance, variant, instance.total_capacity());
}

/// Pseudo-polynomial DP over the single row's right-hand side.
Selection solve_dp_single_row(const SelectionProblem& problem);

/// Two-row DP over (rhs_0 + 1) * (rhs_1 + 1) states. Meant as a cross-check.
Selection solve_dp_two_rows(const SelectionProblem& problem);

struct ExactOptions {
  std::optional<std::uint64_t> node_budget;
};

struct ExactStats {
  std::uint64_t nodes = 0;
  bool dp_bound = false;
};

/// Depth-first branch-and-bound, include branch first. Groups are ordered
/// by reward / row-0 ratio; with several rows, by the root LP solution and
/// then by reward per unit of the dual-weighted row sum. Identical groups are
/// taken as a prefix of their run in that order. Bounds: a Lagrangian bound
/// from the root LP duals (scaled to integers, evaluated exactly), an exact
/// suffix DP on row 0 (with the other rows priced in) when the table is
/// small enough, and fractional bounds per row. Returns the first optimal
/// selection met. Throws BudgetExceeded when the node budget runs out.
Selection solve_exact(const SelectionProblem& problem, const ExactOptions& options = {}, ExactStats* stats = nullptr);

}  // namespace gmkp
