#include "gmkp/model.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "gmkp/errors.hpp"

namespace gmkp {

Instance Instance::from_groups(std::vector<std::int64_t> capacities, const std::vector<GroupSpec>& groups,
                               std::string id) {
  Instance inst;
  inst.capacities = std::move(capacities);
  inst.id = std::move(id);
  for (const GroupSpec& g : groups) {
    std::vector<Index> members;
    for (const std::int64_t w : g.weights) {
      members.push_back(inst.item_weights.size());
      inst.item_weights.push_back(w);
    }
    inst.groups.push_back(std::move(members));
    inst.rewards.push_back(g.reward);
  }
  return inst;
}

std::int64_t Instance::total_capacity() const { return std::accumulate(capacities.begin(), capacities.end(), std::int64_t{0}); }

std::int64_t Instance::max_capacity() const {
  return capacities.empty() ? 0 : *std::max_element(capacities.begin(), capacities.end());
}

std::int64_t Instance::min_capacity() const {
  return capacities.empty() ? 0 : *std::min_element(capacities.begin(), capacities.end());
}

std::int64_t Instance::max_weight() const {
  return item_weights.empty() ? 0 : *std::max_element(item_weights.begin(), item_weights.end());
}

std::int64_t Instance::min_weight() const {
  return item_weights.empty() ? 0 : *std::min_element(item_weights.begin(), item_weights.end());
}

std::int64_t Instance::group_weight(Index group) const {
  std::int64_t total = 0;
  for (const Index j : groups[group]) total += item_weights[j];
  return total;
}

std::vector<std::int64_t> Instance::group_weights() const {
  std::vector<std::int64_t> out(groups.size());
  for (Index l = 0; l < groups.size(); ++l) out[l] = group_weight(l);
  return out;
}

bool Instance::equal_capacities() const {
  return std::adjacent_find(capacities.begin(), capacities.end(), std::not_equal_to<>()) == capacities.end();
}

std::vector<Index> Instance::group_of() const {
  std::vector<Index> out(item_weights.size(), npos);
  for (Index l = 0; l < groups.size(); ++l) {
    for (const Index j : groups[l]) {
      if (j < out.size()) out[j] = l;
    }
  }
  return out;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::TooFewKnapsacks: return "too_few_knapsacks";
    case ViolationKind::NonPositiveCapacity: return "non_positive_capacity";
    case ViolationKind::NonPositiveWeight: return "non_positive_weight";
    case ViolationKind::WeightAboveMaxCapacity: return "weight_above_max_capacity";
    case ViolationKind::RewardCountMismatch: return "reward_count_mismatch";
    case ViolationKind::NonPositiveReward: return "non_positive_reward";
    case ViolationKind::EmptyGroup: return "empty_group";
    case ViolationKind::ItemIndexOutOfRange: return "item_index_out_of_range";
    case ViolationKind::ItemInSeveralGroups: return "item_in_several_groups";
    case ViolationKind::ItemInNoGroup: return "item_in_no_group";
    case ViolationKind::GroupExceedsTotalCapacity: return "group_exceeds_total_capacity";
    case ViolationKind::SmallestKnapsackFitsNothing: return "smallest_knapsack_fits_nothing";
    case ViolationKind::Overflow: return "overflow";
  }
  return "unknown";
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind kind, Index index, std::string msg) {
    out.push_back({kind, index, std::move(msg)});
  };
  constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

  if (inst.capacities.size() < 2) {
    add(ViolationKind::TooFewKnapsacks, npos, "need at least 2 knapsacks, got " + std::to_string(inst.capacities.size()));
  }
  __int128 cap_sum = 0;
  for (Index i = 0; i < inst.capacities.size(); ++i) {
    if (inst.capacities[i] <= 0) add(ViolationKind::NonPositiveCapacity, i, "capacity of knapsack " + std::to_string(i) + " is not positive");
    cap_sum += inst.capacities[i];
  }
  if (cap_sum > kMax) add(ViolationKind::Overflow, npos, "sum of capacities overflows 64 bits");

  const std::int64_t c_max = inst.max_capacity();
  __int128 weight_sum = 0;
  for (Index j = 0; j < inst.item_weights.size(); ++j) {
    const std::int64_t w = inst.item_weights[j];
    if (w <= 0) add(ViolationKind::NonPositiveWeight, j, "weight of item " + std::to_string(j) + " is not positive");
    if (w > c_max) add(ViolationKind::WeightAboveMaxCapacity, j, "item " + std::to_string(j) + " is heavier than the largest knapsack");
    weight_sum += w;
  }
  if (weight_sum > kMax) add(ViolationKind::Overflow, npos, "sum of weights overflows 64 bits");

  if (inst.rewards.size() != inst.groups.size()) {
    add(ViolationKind::RewardCountMismatch, npos,
        std::to_string(inst.rewards.size()) + " rewards for " + std::to_string(inst.groups.size()) + " groups");
  }
  __int128 reward_sum = 0;
  for (Index l = 0; l < inst.rewards.size(); ++l) {
    if (inst.rewards[l] <= 0) add(ViolationKind::NonPositiveReward, l, "reward of group " + std::to_string(l) + " is not positive");
    reward_sum += inst.rewards[l];
  }
  if (reward_sum > kMax) add(ViolationKind::Overflow, npos, "sum of rewards overflows 64 bits");

  std::vector<int> seen(inst.item_weights.size(), 0);
  for (Index l = 0; l < inst.groups.size(); ++l) {
    if (inst.groups[l].empty()) add(ViolationKind::EmptyGroup, l, "group " + std::to_string(l) + " is empty");
    __int128 gw = 0;
    for (const Index j : inst.groups[l]) {
      if (j >= inst.item_weights.size()) {
        add(ViolationKind::ItemIndexOutOfRange, l, "group " + std::to_string(l) + " references item " + std::to_string(j));
        continue;
      }
      if (++seen[j] == 2) add(ViolationKind::ItemInSeveralGroups, j, "item " + std::to_string(j) + " appears in several groups");
      gw += inst.item_weights[j];
    }
    if (gw > cap_sum) {
      add(ViolationKind::GroupExceedsTotalCapacity, l, "group " + std::to_string(l) + " weighs more than the total capacity");
    }
  }
  for (Index j = 0; j < seen.size(); ++j) {
    if (seen[j] == 0) add(ViolationKind::ItemInNoGroup, j, "item " + std::to_string(j) + " belongs to no group");
  }
  if (!inst.capacities.empty() && !inst.item_weights.empty() && inst.min_capacity() < inst.min_weight()) {
    const auto it = std::min_element(inst.capacities.begin(), inst.capacities.end());
    add(ViolationKind::SmallestKnapsackFitsNothing, static_cast<Index>(it - inst.capacities.begin()),
        "no item fits into the smallest knapsack");
  }
  return out;
}

bool is_plain_mkp(const Instance& inst) {
  return std::none_of(inst.groups.begin(), inst.groups.end(), [](const auto& g) { return g.size() >= 2; });
}

Normalized normalize(const Instance& inst) {
  for (const std::int64_t c : inst.capacities) {
    if (c <= 0) throw InputError("normalize: capacities must be positive");
  }
  for (const std::int64_t w : inst.item_weights) {
    if (w <= 0) throw InputError("normalize: weights must be positive");
  }

  std::vector<bool> knap_alive(inst.capacities.size(), true);
  std::vector<bool> group_alive(inst.groups.size(), true);
  const std::vector<std::int64_t> gw = inst.group_weights();

  for (bool changed = true; changed;) {
    changed = false;
    std::int64_t min_w = std::numeric_limits<std::int64_t>::max();
    for (Index l = 0; l < inst.groups.size(); ++l) {
      if (!group_alive[l]) continue;
      for (const Index j : inst.groups[l]) min_w = std::min(min_w, inst.item_weights[j]);
    }
    std::int64_t cap_sum = 0;
    std::int64_t cap_max = 0;
    for (Index i = 0; i < inst.capacities.size(); ++i) {
      if (!knap_alive[i]) continue;
      if (inst.capacities[i] < min_w) {
        knap_alive[i] = false;
        changed = true;
        continue;
      }
      cap_sum += inst.capacities[i];
      cap_max = std::max(cap_max, inst.capacities[i]);
    }
    for (Index l = 0; l < inst.groups.size(); ++l) {
      if (!group_alive[l]) continue;
      bool drop = gw[l] > cap_sum;
      for (const Index j : inst.groups[l]) drop = drop || inst.item_weights[j] > cap_max;
      if (drop) {
        group_alive[l] = false;
        changed = true;
      }
    }
  }

  Normalized out;
  Instance& res = out.instance;
  NormalizationReport& rep = out.report;
  res.id = inst.id;
  res.meta = inst.meta;
  for (Index i = 0; i < inst.capacities.size(); ++i) {
    if (knap_alive[i]) {
      rep.kept_knapsacks.push_back(i);
      res.capacities.push_back(inst.capacities[i]);
    } else {
      rep.removed_knapsacks.push_back(i);
    }
  }
  if (res.capacities.size() < 2) {
    throw InputError("normalize: fewer than 2 knapsacks remain (" + std::to_string(res.capacities.size()) + ")");
  }
  for (Index l = 0; l < inst.groups.size(); ++l) {
    if (!group_alive[l]) {
      rep.removed_groups.push_back(l);
      continue;
    }
    rep.kept_groups.push_back(l);
    std::vector<Index> members;
    for (const Index j : inst.groups[l]) {
      members.push_back(res.item_weights.size());
      res.item_weights.push_back(inst.item_weights[j]);
      rep.kept_items.push_back(j);
    }
    res.groups.push_back(std::move(members));
    res.rewards.push_back(l < inst.rewards.size() ? inst.rewards[l] : 0);
  }
  // Keep the item numbering untouched when nothing was removed and items are
  // already numbered group by group; otherwise items are renumbered above.
  if (!rep.changed()) {
    res.item_weights = inst.item_weights;
    res.groups = inst.groups;
    rep.kept_items.resize(inst.item_weights.size());
    std::iota(rep.kept_items.begin(), rep.kept_items.end(), Index{0});
  }
  rep.plain_mkp = is_plain_mkp(res);
  return out;
}

Index Selection::count() const { return static_cast<Index>(std::count(chosen.begin(), chosen.end(), true)); }

std::vector<Index> Selection::indices() const {
  std::vector<Index> out;
  for (Index l = 0; l < chosen.size(); ++l) {
    if (chosen[l]) out.push_back(l);
  }
  return out;
}

std::int64_t Selection::reward(const Instance& instance) const {
  std::int64_t total = 0;
  for (Index l = 0; l < chosen.size(); ++l) {
    if (chosen[l]) total += instance.rewards[l];
  }
  return total;
}

std::int64_t Selection::weight(const Instance& instance) const {
  std::int64_t total = 0;
  for (Index l = 0; l < chosen.size(); ++l) {
    if (chosen[l]) total += instance.group_weight(l);
  }
  return total;
}

Assignment::Assignment(Index num_knapsacks, std::span<const std::int64_t> item_weights)
    : placement_(item_weights.size()), loads_(num_knapsacks, 0), weights_(item_weights.begin(), item_weights.end()) {}

Assignment::Assignment(const Instance& instance) : Assignment(instance.num_knapsacks(), instance.item_weights) {}

void Assignment::place(Index item, Index knapsack) {
  if (item >= placement_.size() || knapsack >= loads_.size()) throw InvariantViolation("Assignment::place: index out of range");
  if (placement_[item]) loads_[*placement_[item]] -= weights_[item];
  placement_[item] = knapsack;
  loads_[knapsack] += weights_[item];
}

void Assignment::unplace(Index item) {
  if (placement_[item]) {
    loads_[*placement_[item]] -= weights_[item];
    placement_[item].reset();
  }
}

void Assignment::move(Index item, Index knapsack) {
  if (!placement_[item]) throw InvariantViolation("Assignment::move: item is not placed");
  place(item, knapsack);
}

void Assignment::swap(Index a, Index b) {
  if (!placement_[a] || !placement_[b]) throw InvariantViolation("Assignment::swap: item is not placed");
  const Index ka = *placement_[a];
  const Index kb = *placement_[b];
  place(a, kb);
  place(b, ka);
}

std::int64_t Assignment::max_exceeded(std::span<const std::int64_t> capacities) const {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (Index i = 0; i < loads_.size(); ++i) best = std::max(best, loads_[i] - capacities[i]);
  return best;
}

bool Assignment::loads_consistent() const {
  std::vector<std::int64_t> fresh(loads_.size(), 0);
  for (Index j = 0; j < placement_.size(); ++j) {
    if (placement_[j]) fresh[*placement_[j]] += weights_[j];
  }
  return fresh == loads_;
}

std::string consistency_error(const Instance& inst, const Selection& sel, const Assignment& asg) {
  if (sel.size() != inst.num_groups()) return "selection has wrong length";
  if (asg.num_items() != inst.num_items()) return "assignment has wrong item count";
  if (asg.num_knapsacks() != inst.num_knapsacks()) return "assignment has wrong knapsack count";
  for (Index j = 0; j < inst.num_items(); ++j) {
    if (asg.weight(j) != inst.item_weights[j]) return "assignment weights differ from instance";
  }
  for (Index l = 0; l < inst.num_groups(); ++l) {
    for (const Index j : inst.groups[l]) {
      const bool placed = asg.knapsack_of(j).has_value();
      if (sel[l] && !placed) return "item " + std::to_string(j) + " of chosen group " + std::to_string(l) + " is not placed";
      if (!sel[l] && placed) return "item " + std::to_string(j) + " of unchosen group " + std::to_string(l) + " is placed";
    }
  }
  if (!asg.loads_consistent()) return "stored loads differ from placement";
  return {};
}

BiCriteriaMetrics metrics(const Instance& inst, const Selection& sel, const Assignment& asg,
                          std::optional<std::int64_t> oracle_reward) {
  if (const std::string err = consistency_error(inst, sel, asg); !err.empty()) {
    throw InvariantViolation("metrics: " + err);
  }
  BiCriteriaMetrics m;
  m.reward = sel.reward(inst);
  m.max_exceeded = asg.max_exceeded(inst.capacities);
  m.beta_ratio = Rational(m.max_exceeded, inst.max_capacity());
  if (oracle_reward) m.alpha_ratio = *oracle_reward > 0 ? Rational(m.reward, *oracle_reward) : Rational(1);
  return m;
}

}  // namespace gmkp
