#include "gmkp/lp_greedy.hpp"

#include <algorithm>
#include <numeric>

#include "gmkp/errors.hpp"

namespace gmkp {

Rational FractionalSolution::objective(const Instance& instance) const {
  Rational total;
  for (Index l = 0; l < z.size(); ++l) total += z[l] * Rational(instance.rewards[l]);
  return total;
}

std::vector<Index> FractionalSolution::partial_groups() const {
  std::vector<Index> out;
  for (Index l = 0; l < z.size(); ++l) {
    if (z[l] > Rational(0) && z[l] < Rational(1)) out.push_back(l);
  }
  return out;
}

std::vector<Rational> FractionalSolution::knapsack_loads(const Instance& instance) const {
  std::vector<Rational> loads(instance.num_knapsacks());
  for (const auto& [key, frac] : x) loads[key.first] += frac * Rational(instance.item_weights[key.second]);
  return loads;
}

std::vector<Index> sort_groups(const Instance& instance) {
  const std::vector<std::int64_t> weights = instance.group_weights();
  std::vector<Index> order(instance.num_groups());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    // p_a / W_a > p_b / W_b
    return static_cast<__int128>(instance.rewards[a]) * weights[b] > static_cast<__int128>(instance.rewards[b]) * weights[a];
  });
  return order;
}

FractionalSolution greedy_lp(const Instance& instance, std::int64_t total_capacity) {
  if (total_capacity < 0) throw InputError("greedy_lp: total capacity must be non-negative");
  const Index m = instance.num_knapsacks();
  if (m == 0) throw InputError("greedy_lp: instance has no knapsacks");

  FractionalSolution sol;
  sol.z.assign(instance.num_groups(), Rational(0));

  Rational remaining(total_capacity);
  Index knapsack = 0;
  Rational knapsack_weight;

  for (const Index l : sort_groups(instance)) {
    if (remaining <= Rational(0)) break;
    const std::int64_t group_weight = instance.group_weight(l);
    const Rational z = std::min(Rational(1), remaining / Rational(group_weight));
    sol.z[l] = z;
    for (const Index j : instance.groups[l]) {
      const Rational w(instance.item_weights[j]);
      Rational item_weight = z * w;
      while (item_weight > Rational(0)) {
        ++sol.placement_steps;
        if (knapsack == m) {
          sol.x[{m - 1, j}] += item_weight / w;
          break;
        }
        const Rational amount = std::min(item_weight, Rational(instance.capacities[knapsack]) - knapsack_weight);
        sol.x[{knapsack, j}] += amount / w;
        item_weight -= amount;
        knapsack_weight += amount;
        if (knapsack_weight == Rational(instance.capacities[knapsack])) {
          knapsack_weight = Rational(0);
          ++knapsack;
        }
      }
    }
    remaining -= z * Rational(group_weight);
  }
  return sol;
}

}  // namespace gmkp
