#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmkp/rational.hpp"

namespace gmkp {

using Index = std::size_t;

/// One GMKP instance: knapsacks, items, the partition of items into
/// all-or-nothing groups, and a reward per group. All data are integers.
///
/// Items are referred to by global index into `item_weights`; `groups[l]`
/// lists the items of group l. Plain aggregate: use validate() to check it.
struct Instance {
  std::vector<std::int64_t> capacities;
  std::vector<std::int64_t> item_weights;
  std::vector<std::vector<Index>> groups;
  std::vector<std::int64_t> rewards;
  std::string id;
  /// Opaque metadata, stored as compact JSON object text ("" means none).
  std::string meta;

  struct GroupSpec {
    std::int64_t reward;
    std::vector<std::int64_t> weights;
  };
  /// Builds an instance whose items are numbered group by group.
  static Instance from_groups(std::vector<std::int64_t> capacities, const std::vector<GroupSpec>& groups,
                              std::string id = {});

  Index num_knapsacks() const { return capacities.size(); }
  Index num_items() const { return item_weights.size(); }
  Index num_groups() const { return groups.size(); }

  std::int64_t total_capacity() const;
  std::int64_t max_capacity() const;
  std::int64_t min_capacity() const;
  std::int64_t max_weight() const;
  std::int64_t min_weight() const;
  std::int64_t group_weight(Index group) const;
  std::vector<std::int64_t> group_weights() const;
  bool equal_capacities() const;
  /// group_of()[j] is the group containing item j (or npos for items in no group).
  std::vector<Index> group_of() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline constexpr Index npos = static_cast<Index>(-1);

enum class ViolationKind {
  TooFewKnapsacks,
  NonPositiveCapacity,
  NonPositiveWeight,
  WeightAboveMaxCapacity,
  RewardCountMismatch,
  NonPositiveReward,
  EmptyGroup,
  ItemIndexOutOfRange,
  ItemInSeveralGroups,
  ItemInNoGroup,
  GroupExceedsTotalCapacity,
  SmallestKnapsackFitsNothing,
  Overflow,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  /// Offending knapsack, item or group index (npos when not applicable).
  Index index = npos;
  std::string message;
};

/// Returns every violated instance invariant; empty iff the instance is valid.
std::vector<Violation> validate(const Instance& instance);

/// True when every group has a single item, i.e. the instance is a plain MKP.
bool is_plain_mkp(const Instance& instance);

struct NormalizationReport {
  std::vector<Index> removed_knapsacks;
  std::vector<Index> removed_groups;
  /// kept_knapsacks[i] / kept_groups[l] give the original index of the
  /// normalized knapsack i / group l.
  std::vector<Index> kept_knapsacks;
  std::vector<Index> kept_groups;
  /// kept_items[j] is the original index of normalized item j.
  std::vector<Index> kept_items;
  bool plain_mkp = false;

  bool changed() const { return !removed_knapsacks.empty() || !removed_groups.empty(); }
};

struct Normalized {
  Instance instance;
  NormalizationReport report;
};

/// Drops knapsacks no item fits into and groups that cannot be packed (total
/// weight above the total capacity, or an item heavier than every knapsack),
/// repeating until nothing changes. Throws InputError when fewer than two
/// knapsacks survive or weights/capacities are not positive.
Normalized normalize(const Instance& instance);

/// Binary group choice z_l.
struct Selection {
  std::vector<bool> chosen;

  Selection() = default;
  explicit Selection(Index num_groups) : chosen(num_groups, false) {}
  explicit Selection(std::vector<bool> c) : chosen(std::move(c)) {}

  Index size() const { return chosen.size(); }
  bool operator[](Index l) const { return chosen[l]; }
  Index count() const;
  std::vector<Index> indices() const;
  std::int64_t reward(const Instance& instance) const;
  std::int64_t weight(const Instance& instance) const;

  friend bool operator==(const Selection&, const Selection&) = default;
  friend auto operator<=>(const Selection& a, const Selection& b) { return a.chosen <=> b.chosen; }
};

/// Item to knapsack placement x_ij together with per-knapsack loads. Loads are
/// maintained by every mutator so they always equal the placed weight.
class Assignment {
 public:
  Assignment() = default;
  Assignment(Index num_knapsacks, std::span<const std::int64_t> item_weights);
  explicit Assignment(const Instance& instance);

  Index num_knapsacks() const { return loads_.size(); }
  Index num_items() const { return placement_.size(); }
  const std::vector<std::optional<Index>>& placement() const { return placement_; }
  const std::vector<std::int64_t>& loads() const { return loads_; }
  std::optional<Index> knapsack_of(Index item) const { return placement_[item]; }
  std::int64_t weight(Index item) const { return weights_[item]; }

  void place(Index item, Index knapsack);
  void unplace(Index item);
  void move(Index item, Index knapsack);
  /// Exchanges the knapsacks of two placed items.
  void swap(Index a, Index b);

  std::int64_t max_exceeded(std::span<const std::int64_t> capacities) const;
  /// Recomputes loads from the placement and compares with the stored ones.
  bool loads_consistent() const;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.placement_ == b.placement_ && a.loads_ == b.loads_;
  }

 private:
  std::vector<std::optional<Index>> placement_;
  std::vector<std::int64_t> loads_;
  std::vector<std::int64_t> weights_;
};

/// Exactness / consistency check between a selection and an assignment: every
/// item of a chosen group placed, nothing else placed, loads consistent.
/// Returns an empty string when consistent, otherwise a description.
std::string consistency_error(const Instance& instance, const Selection& selection, const Assignment& assignment);

struct BiCriteriaMetrics {
  std::int64_t reward = 0;
  /// max_i (load_i - c_i); negative values are slack.
  std::int64_t max_exceeded = 0;
  /// reward / v* (1 when v* = 0).
  std::optional<Rational> alpha_ratio;
  /// max_exceeded / c_max.
  std::optional<Rational> beta_ratio;
};

/// Throws InvariantViolation when selection and assignment disagree.
BiCriteriaMetrics metrics(const Instance& instance, const Selection& selection, const Assignment& assignment,
                          std::optional<std::int64_t> oracle_reward = std::nullopt);

}  // namespace gmkp
