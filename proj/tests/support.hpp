// Independent reference implementations shared by the unit tests and the
// acceptance suite. Everything here is deliberately naive.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gmkp/gen.hpp"
#include "gmkp/heuristics.hpp"
#include "gmkp/model.hpp"
#include "gmkp/subset_select.hpp"

namespace testsupport {

using gmkp::Index;
using gmkp::Instance;

/// Can `weights` be packed into knapsacks of the given capacities? Memoized
/// search over (next item, sorted residual multiset).
inline bool packs(const std::vector<std::int64_t>& capacities, std::vector<std::int64_t> weights) {
  std::sort(weights.rbegin(), weights.rend());
  std::set<std::pair<std::size_t, std::vector<std::int64_t>>> dead;
  auto rec = [&](auto&& self, std::size_t j, std::vector<std::int64_t> residual) -> bool {
    if (j == weights.size()) return true;
    std::sort(residual.begin(), residual.end());
    if (dead.count({j, residual})) return false;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (residual[i] < weights[j]) continue;
      if (i > 0 && residual[i] == residual[i - 1]) continue;
      auto next = residual;
      next[i] -= weights[j];
      if (self(self, j + 1, next)) return true;
    }
    dead.insert({j, residual});
    return false;
  };
  return rec(rec, 0, capacities);
}

inline std::vector<std::int64_t> chosen_weights(const Instance& inst, const std::vector<bool>& chosen) {
  std::vector<std::int64_t> w;
  for (Index l = 0; l < inst.num_groups(); ++l) {
    if (!chosen[l]) continue;
    for (const Index j : inst.groups[l]) w.push_back(inst.item_weights[j]);
  }
  return w;
}

/// GMKP optimum by enumerating all 2^k group subsets.
inline std::int64_t brute_gmkp(const Instance& inst) {
  const Index k = inst.num_groups();
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<bool> chosen(k);
    std::int64_t reward = 0;
    for (Index l = 0; l < k; ++l) {
      chosen[l] = (mask >> l) & 1U;
      if (chosen[l]) reward += inst.rewards[l];
    }
    if (reward <= best) continue;
    if (packs(inst.capacities, chosen_weights(inst, chosen))) best = reward;
  }
  return best;
}

inline bool satisfies(const gmkp::SelectionProblem& problem, std::uint64_t mask) {
  for (const auto& row : problem.rows) {
    std::int64_t lhs = 0;
    for (Index l = 0; l < problem.num_groups(); ++l) {
      if ((mask >> l) & 1U) lhs += row.coeffs[l];
    }
    if (lhs > row.rhs) return false;
  }
  return true;
}

/// Bitmasks of all selections satisfying every row, ascending.
inline std::vector<std::uint64_t> brute_feasible_masks(const gmkp::SelectionProblem& problem) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << problem.num_groups()); ++mask) {
    if (satisfies(problem, mask)) out.push_back(mask);
  }
  return out;
}

inline std::int64_t brute_selection_value(const gmkp::SelectionProblem& problem) {
  std::int64_t best = 0;
  for (const std::uint64_t mask : brute_feasible_masks(problem)) {
    std::int64_t v = 0;
    for (Index l = 0; l < problem.num_groups(); ++l) {
      if ((mask >> l) & 1U) v += problem.group_rewards[l];
    }
    best = std::max(best, v);
  }
  return best;
}

inline std::uint64_t to_mask(const gmkp::Selection& s) {
  std::uint64_t mask = 0;
  for (Index l = 0; l < s.size(); ++l) {
    if (s[l]) mask |= std::uint64_t{1} << l;
  }
  return mask;
}

/// Non-dominated indices by pairwise comparison.
inline std::set<Index> brute_pareto(const std::vector<gmkp::ObjectivePoint>& pts) {
  std::set<Index> keep;
  for (Index a = 0; a < pts.size(); ++a) {
    bool dominated = false;
    for (Index b = 0; b < pts.size() && !dominated; ++b) {
      const bool weakly = pts[b].reward >= pts[a].reward && pts[b].max_exceeded <= pts[a].max_exceeded;
      const bool strictly = pts[b].reward > pts[a].reward || pts[b].max_exceeded < pts[a].max_exceeded;
      dominated = weakly && strictly;
    }
    if (!dominated) keep.insert(a);
  }
  return keep;
}

inline std::int64_t potential(const Instance& inst, const std::vector<std::int64_t>& loads) {
  const std::int64_t cmax = inst.max_capacity();
  std::int64_t phi = 0;
  for (Index i = 0; i < loads.size(); ++i) {
    const std::int64_t v = loads[i] - inst.capacities[i] + cmax;
    phi += v * v;
  }
  return phi;
}

inline std::int64_t max_over(const Instance& inst, const std::vector<std::int64_t>& loads) {
  std::int64_t best = loads[0] - inst.capacities[0];
  for (Index i = 1; i < loads.size(); ++i) best = std::max(best, loads[i] - inst.capacities[i]);
  return best;
}

/// Scans every jump and swap from scratch; true if one lowers the potential
/// without raising the maximum overload.
inline bool has_improving_move(const Instance& inst, const gmkp::Assignment& a) {
  const auto& loads = a.loads();
  const std::int64_t phi = potential(inst, loads);
  const std::int64_t over = max_over(inst, loads);
  auto improves = [&](const std::vector<std::int64_t>& l) { return potential(inst, l) < phi && max_over(inst, l) <= over; };
  for (Index j = 0; j < a.num_items(); ++j) {
    const auto from = a.knapsack_of(j);
    if (!from) continue;
    for (Index t = 0; t < inst.num_knapsacks(); ++t) {
      if (t == *from) continue;
      auto l = loads;
      l[*from] -= a.weight(j);
      l[t] += a.weight(j);
      if (improves(l)) return true;
    }
    for (Index j2 = j + 1; j2 < a.num_items(); ++j2) {
      const auto to = a.knapsack_of(j2);
      if (!to || *to == *from) continue;
      auto l = loads;
      l[*from] += a.weight(j2) - a.weight(j);
      l[*to] += a.weight(j) - a.weight(j2);
      if (improves(l)) return true;
    }
  }
  return false;
}

/// Downscaled generator instances: m <= 4, k <= 8, n <= 16. Every other
/// instance gets unequal capacities; reward schemes cycle through R0..R3.
inline std::vector<Instance> small_suite(std::size_t count, std::uint64_t seed) {
  std::vector<Instance> out;
  std::mt19937_64 rng(seed);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  while (out.size() < count) {
    gmkp::GeneratorParams p;
    p.capacity = pick(6, 20);
    p.m = pick(2, 4);
    p.w_split = pick(1, p.capacity - 1);
    p.w_min = pick(1, std::min(p.capacity / 2, p.capacity - p.w_split));
    p.w_mode = pick(p.w_min, p.w_max());
    p.r_load = gmkp::Rational(pick(50, 300), 100);
    p.r_conc = gmkp::Rational(pick(0, 100), 100);
    p.seed = rng();
    Instance inst = gmkp::generate_instance(p);
    if (out.size() % 2 == 1) {
      for (Index i = 1; i < inst.capacities.size(); ++i) inst.capacities[i] -= pick(0, p.capacity / 2);
    }
    const auto tag = static_cast<gmkp::RewardTag>(out.size() % 4);
    inst = gmkp::apply_reward_scheme(inst, {tag, rng()});
    gmkp::Normalized norm;
    try {
      norm = gmkp::normalize(inst);
    } catch (const std::exception&) {
      continue;
    }
    const Instance& n = norm.instance;
    if (n.num_items() > 16 || n.num_groups() > 8 || n.num_groups() == 0 || !gmkp::validate(n).empty()) continue;
    Instance kept = n;
    kept.id = "small_" + std::to_string(out.size());
    out.push_back(std::move(kept));
  }
  return out;
}

}  // namespace testsupport
