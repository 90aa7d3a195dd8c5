#include "gmkp/heuristics.hpp"

#include <algorithm>
#include <numeric>

#include "gmkp/errors.hpp"

namespace gmkp {

namespace {

SolveResult empty_result(const Instance& instance, const Variant& variant) {
  SolveResult r;
  r.algorithm = variant.name();
  r.variant = variant;
  r.selection = Selection(instance.num_groups());
  r.assignment = Assignment(instance);
  r.metrics = metrics(instance, r.selection, r.assignment);
  r.total_capacity = 0;
  return r;
}

}  // namespace

BinarySearchResult binary_search_feasible(const Instance& instance, const Variant& variant,
                                          const BinarySearchOptions& options) {
  BinarySearchResult out;
  out.best = empty_result(instance, variant);

  std::int64_t left = 0;
  std::int64_t right = instance.total_capacity();
  while (left <= right) {
    if (options.max_probes && out.probes >= *options.max_probes) {
      out.budget_exhausted = true;
      break;
    }
    const std::int64_t total = left + (right - left) / 2;
    ++out.probes;
    RunOptions run;
    run.swap_opt = options.swap_opt;
    run.total_capacity = total;
    run.exact = options.exact;
    SolveResult probe;
    try {
      probe = run_algorithm(instance, variant, run);
    } catch (const BudgetExceeded& e) {
      out.warning = e.what();
      break;
    }
    if (probe.metrics.max_exceeded <= 0) {
      left = total + 1;
      if (probe.metrics.reward >= out.best.metrics.reward) out.best = std::move(probe);
    } else {
      right = total - 1;
    }
  }
  return out;
}

std::vector<Rational> default_sweep_factors() {
  std::vector<Rational> f;
  for (int i = 15; i <= 25; ++i) f.emplace_back(i, 20);
  return f;
}

std::vector<SweepEntry> capacity_sweep(const Instance& instance, const Variant& variant,
                                       const std::vector<Rational>& factors, bool swap_opt, const ExactOptions& exact) {
  for (const Rational& f : factors) {
    if (f <= Rational(0)) throw InputError("capacity_sweep: factors must be positive, got " + f.str());
  }
  std::vector<SweepEntry> out;
  for (const Rational& f : factors) {
    SweepEntry e;
    e.factor = f;
    e.total_capacity = (f * Rational(instance.total_capacity())).floor();
    RunOptions run;
    run.swap_opt = swap_opt;
    run.total_capacity = e.total_capacity;
    run.exact = exact;
    try {
      e.result = run_algorithm(instance, variant, run);
    } catch (const Error& err) {
      e.error = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Index> pareto_indices(const std::vector<ObjectivePoint>& points) {
  std::vector<Index> order(points.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (points[a].max_exceeded != points[b].max_exceeded) return points[a].max_exceeded < points[b].max_exceeded;
    return points[a].reward > points[b].reward;
  });
  // Sweep by increasing max_exceeded: a point survives iff its reward beats
  // every point with strictly smaller max_exceeded, and no point with equal
  // max_exceeded has a larger reward.
  std::vector<Index> keep;
  bool have_prev = false;
  std::int64_t best_prev = 0;  // best reward among strictly smaller max_exceeded
  for (Index pos = 0; pos < order.size();) {
    Index end = pos;
    const std::int64_t exc = points[order[pos]].max_exceeded;
    while (end < order.size() && points[order[end]].max_exceeded == exc) ++end;
    const std::int64_t top = points[order[pos]].reward;
    std::vector<Index> block;
    for (Index q = pos; q < end; ++q) {
      const Index idx = order[q];
      if (points[idx].reward == top && (!have_prev || top > best_prev)) block.push_back(idx);
    }
    std::sort(block.begin(), block.end());
    keep.insert(keep.end(), block.begin(), block.end());
    best_prev = have_prev ? std::max(best_prev, top) : top;
    have_prev = true;
    pos = end;
  }
  return keep;
}

std::vector<SolveResult> pareto_frontier(const std::vector<SolveResult>& results) {
  std::vector<ObjectivePoint> pts;
  pts.reserve(results.size());
  for (const SolveResult& r : results) pts.push_back({r.metrics.reward, r.metrics.max_exceeded});
  std::vector<SolveResult> out;
  for (const Index i : pareto_indices(pts)) out.push_back(results[i]);
  return out;
}

}  // namespace gmkp
