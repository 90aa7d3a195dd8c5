#include "gmkp/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "gmkp/errors.hpp"

namespace gmkp {

namespace {

class Packer {
 public:
  Packer(const Instance& instance, std::uint64_t& nodes, std::uint64_t budget)
      : instance_(instance), nodes_(nodes), budget_(budget) {}

  std::optional<Assignment> pack(const Selection& selection) {
    items_.clear();
    for (Index l = 0; l < instance_.num_groups(); ++l) {
      if (selection[l]) items_.insert(items_.end(), instance_.groups[l].begin(), instance_.groups[l].end());
    }
    std::sort(items_.begin(), items_.end(), [&](Index a, Index b) {
      const std::int64_t wa = instance_.item_weights[a];
      const std::int64_t wb = instance_.item_weights[b];
      return wa != wb ? wa > wb : a < b;
    });
    suffix_weight_.assign(items_.size() + 1, 0);
    for (Index p = items_.size(); p-- > 0;) suffix_weight_[p] = suffix_weight_[p + 1] + instance_.item_weights[items_[p]];
    residual_ = instance_.capacities;
    target_.assign(items_.size(), 0);
    if (suffix_weight_[0] > instance_.total_capacity()) return std::nullopt;
    if (!dfs(0, instance_.total_capacity())) return std::nullopt;

    Assignment out(instance_);
    for (Index p = 0; p < items_.size(); ++p) out.place(items_[p], target_[p]);
    return out;
  }

 private:
  bool dfs(Index pos, std::int64_t residual_total) {
    if (++nodes_ > budget_) throw BudgetExceeded("oracle: node budget of " + std::to_string(budget_) + " exhausted");
    if (pos == items_.size()) return true;
    if (suffix_weight_[pos] > residual_total) return false;
    const std::int64_t w = instance_.item_weights[items_[pos]];
    for (Index i = 0; i < residual_.size(); ++i) {
      if (residual_[i] < w) continue;
      bool repeated = false;
      for (Index h = 0; h < i && !repeated; ++h) repeated = residual_[h] == residual_[i];
      if (repeated) continue;
      residual_[i] -= w;
      target_[pos] = i;
      const bool ok = dfs(pos + 1, residual_total - w);
      residual_[i] += w;
      if (ok) return true;
    }
    return false;
  }

  const Instance& instance_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
  std::vector<Index> items_;
  std::vector<std::int64_t> suffix_weight_;
  std::vector<std::int64_t> residual_;
  std::vector<Index> target_;
};

}  // namespace

std::optional<Assignment> feasible_packing(const Instance& instance, const Selection& selection,
                                           const OracleOptions& options) {
  if (selection.size() != instance.num_groups()) throw InputError("feasible_packing: selection length mismatch");
  std::uint64_t nodes = 0;
  Packer packer(instance, nodes, options.node_budget);
  return packer.pack(selection);
}

ExactGmkp exact_gmkp(const Instance& instance, const OracleOptions& options) {
  for (Index l = 0; l < instance.num_groups(); ++l) {
    if (instance.group_weight(l) > instance.total_capacity()) {
      throw InputError("exact_gmkp: group " + std::to_string(l) + " exceeds the total capacity; normalize first");
    }
  }
  const Index k = instance.num_groups();
  std::vector<Index> order(k);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return instance.rewards[a] > instance.rewards[b]; });
  const std::vector<std::int64_t> gw = instance.group_weights();
  std::vector<std::int64_t> suffix_reward(k + 1, 0);
  for (Index p = k; p-- > 0;) suffix_reward[p] = suffix_reward[p + 1] + instance.rewards[order[p]];

  std::uint64_t nodes = 0;
  Packer packer(instance, nodes, options.node_budget);
  Selection current(k);
  Selection best(k);
  std::int64_t best_value = 0;
  std::optional<Assignment> best_packing = Assignment(instance);
  const std::int64_t capacity = instance.total_capacity();

  auto dfs = [&](auto&& self, Index pos, std::int64_t value, std::int64_t weight) -> void {
    if (++nodes > options.node_budget) {
      throw BudgetExceeded("exact_gmkp: node budget of " + std::to_string(options.node_budget) + " exhausted");
    }
    if (pos == k || value + suffix_reward[pos] <= best_value) return;
    const Index l = order[pos];
    if (weight + gw[l] <= capacity) {
      current.chosen[l] = true;
      if (auto packing = packer.pack(current)) {
        if (value + instance.rewards[l] > best_value) {
          best_value = value + instance.rewards[l];
          best = current;
          best_packing = std::move(packing);
        }
        self(self, pos + 1, value + instance.rewards[l], weight + gw[l]);
      }
      current.chosen[l] = false;
    }
    self(self, pos + 1, value, weight);
  };
  dfs(dfs, 0, 0, 0);

  ExactGmkp out;
  out.optimum = best_value;
  out.nodes = nodes;
  out.witness.algorithm = "exact";
  out.witness.variant = Variant::kp();
  out.witness.selection = best;
  out.witness.assignment = std::move(*best_packing);
  out.witness.total_capacity = capacity;
  out.witness.metrics = metrics(instance, out.witness.selection, out.witness.assignment, best_value);
  return out;
}

std::vector<Selection> enumerate_feasible_z(const SelectionProblem& problem) {
  const Index k = problem.num_groups();
  if (k > 20) throw InputError("enumerate_feasible_z: at most 20 groups supported, got " + std::to_string(k));
  std::vector<Selection> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    bool ok = true;
    for (const ProblemRow& row : problem.rows) {
      std::int64_t lhs = 0;
      for (Index l = 0; l < k; ++l) {
        if (mask >> l & 1U) lhs += row.coeffs[l];
      }
      if (lhs > row.rhs) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Selection s(k);
    for (Index l = 0; l < k; ++l) s.chosen[l] = (mask >> l & 1U) != 0;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace gmkp
