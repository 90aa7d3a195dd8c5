#include "gmkp/assign.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "gmkp/errors.hpp"

namespace gmkp {

Assignment greedy_assign(const Instance& instance, const Selection& selection) {
  if (selection.size() != instance.num_groups()) throw InputError("greedy_assign: selection length differs from group count");
  std::vector<Index> items;
  for (Index l = 0; l < instance.num_groups(); ++l) {
    if (selection[l]) items.insert(items.end(), instance.groups[l].begin(), instance.groups[l].end());
  }
  std::sort(items.begin(), items.end(), [&](Index a, Index b) {
    const std::int64_t wa = instance.item_weights[a];
    const std::int64_t wb = instance.item_weights[b];
    return wa != wb ? wa > wb : a < b;
  });

  Assignment out(instance);
  const Index m = instance.num_knapsacks();
  for (const Index j : items) {
    Index target = 0;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (Index i = 0; i < m; ++i) {
      const std::int64_t over = out.loads()[i] - instance.capacities[i];
      if (over < best) {
        best = over;
        target = i;
      }
    }
    out.place(j, target);
  }
  return out;
}

std::int64_t assignment_potential(const Instance& instance, const Assignment& assignment) {
  const std::int64_t c_max = instance.max_capacity();
  std::int64_t phi = 0;
  for (Index i = 0; i < instance.num_knapsacks(); ++i) {
    const std::int64_t v = assignment.loads()[i] - instance.capacities[i] + c_max;
    phi += v * v;
  }
  return phi;
}

namespace {

/// Overload bookkeeping for O(1) move evaluation.
class MoveEvaluator {
 public:
  MoveEvaluator(const Instance& instance, const Assignment& assignment)
      : instance_(instance), assignment_(assignment), c_max_(instance.max_capacity()) {
    refresh();
  }

  void refresh() {
    top_.fill({std::numeric_limits<std::int64_t>::min(), npos});
    for (Index i = 0; i < instance_.num_knapsacks(); ++i) {
      Entry e{over(i), i};
      for (auto& slot : top_) {
        if (e.value > slot.value) std::swap(slot, e);
      }
    }
    max_over_ = top_[0].value;
  }

  /// Load of p changes by delta_p and load of q by -delta_p.
  bool improving(Index p, Index q, std::int64_t delta_p) const {
    if (delta_p == 0 || p == q) return false;
    const std::int64_t sp = shifted(p);
    const std::int64_t sq = shifted(q);
    const std::int64_t new_sp = sp + delta_p;
    const std::int64_t new_sq = sq - delta_p;
    const std::int64_t dphi = new_sp * new_sp + new_sq * new_sq - sp * sp - sq * sq;
    if (dphi >= 0) return false;
    std::int64_t others = std::numeric_limits<std::int64_t>::min();
    for (const Entry& e : top_) {
      if (e.index != p && e.index != q) {
        others = e.value;
        break;
      }
    }
    const std::int64_t new_max = std::max({others, over(p) + delta_p, over(q) - delta_p});
    return new_max <= max_over_;
  }

 private:
  struct Entry {
    std::int64_t value;
    Index index;
  };

  std::int64_t over(Index i) const { return assignment_.loads()[i] - instance_.capacities[i]; }
  std::int64_t shifted(Index i) const { return over(i) + c_max_; }

  const Instance& instance_;
  const Assignment& assignment_;
  std::int64_t c_max_;
  std::array<Entry, 3> top_{};
  std::int64_t max_over_ = 0;
};

std::uint64_t saturating_guard(std::uint64_t n, std::uint64_t m, std::uint64_t phi) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t g = std::max<std::uint64_t>(phi, 1);
  for (const std::uint64_t f : {n, n, m}) {
    const std::uint64_t ff = std::max<std::uint64_t>(f, 1);
    if (g > kMax / ff) return kMax;
    g *= ff;
  }
  return g;
}

}  // namespace

bool is_improving_jump(const Instance& instance, const Assignment& assignment, Index item, Index target) {
  const auto from = assignment.knapsack_of(item);
  if (!from || *from == target) return false;
  MoveEvaluator eval(instance, assignment);
  return eval.improving(*from, target, -assignment.weight(item));
}

bool is_improving_swap(const Instance& instance, const Assignment& assignment, Index a, Index b) {
  const auto ka = assignment.knapsack_of(a);
  const auto kb = assignment.knapsack_of(b);
  if (!ka || !kb || *ka == *kb) return false;
  MoveEvaluator eval(instance, assignment);
  return eval.improving(*ka, *kb, assignment.weight(b) - assignment.weight(a));
}

Assignment swap_optimal(const Instance& instance, Assignment assignment, LocalSearchStats* stats) {
  if (assignment.num_knapsacks() != instance.num_knapsacks()) throw InputError("swap_optimal: knapsack count mismatch");
  LocalSearchStats local;
  std::vector<Index> placed;
  for (Index j = 0; j < assignment.num_items(); ++j) {
    if (assignment.knapsack_of(j)) placed.push_back(j);
  }
  const Index m = instance.num_knapsacks();
  const auto phi0 = static_cast<std::uint64_t>(assignment_potential(instance, assignment));
  local.step_guard = saturating_guard(placed.size(), m, phi0);

  MoveEvaluator eval(instance, assignment);
  auto find_and_apply = [&]() -> bool {
    for (const Index j : placed) {
      const Index from = *assignment.knapsack_of(j);
      for (Index t = 0; t < m; ++t) {
        if (eval.improving(from, t, -assignment.weight(j))) {
          assignment.move(j, t);
          ++local.jumps;
          return true;
        }
      }
    }
    for (Index x = 0; x < placed.size(); ++x) {
      const Index a = placed[x];
      for (Index y = x + 1; y < placed.size(); ++y) {
        const Index b = placed[y];
        const Index ka = *assignment.knapsack_of(a);
        const Index kb = *assignment.knapsack_of(b);
        if (ka == kb) continue;
        if (eval.improving(ka, kb, assignment.weight(b) - assignment.weight(a))) {
          assignment.swap(a, b);
          ++local.swaps;
          return true;
        }
      }
    }
    return false;
  };

  while (find_and_apply()) {
    if (local.steps() > local.step_guard) {
      throw InvariantViolation("swap_optimal: step guard exceeded");
    }
    eval.refresh();
  }
  if (stats) *stats = local;
  return assignment;
}

}  // namespace gmkp
