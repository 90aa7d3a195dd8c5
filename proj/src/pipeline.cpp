#include "gmkp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "gmkp/errors.hpp"
#include "gmkp/lp_greedy.hpp"

namespace gmkp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

Selection select_groups(const Instance& instance, const Variant& variant, std::int64_t total_capacity,
                        const ExactOptions& exact, std::uint64_t* nodes) {
  if (variant.algorithm == Algorithm::LP) {
    const FractionalSolution lp = greedy_lp(instance, total_capacity);
    Selection sel(instance.num_groups());
    for (Index l = 0; l < lp.z.size(); ++l) sel.chosen[l] = lp.z[l] > Rational(0);
    return sel;
  }
  ExactStats stats;
  Selection sel = solve_exact(build_problem(instance, variant, total_capacity), exact, &stats);
  if (nodes) *nodes = stats.nodes;
  return sel;
}

SolveResult run_algorithm(const Instance& instance, const Variant& variant, const RunOptions& options) {
  SolveResult res;
  res.algorithm = variant.name();
  res.variant = variant;
  res.total_capacity = options.total_capacity.value_or(instance.total_capacity());

  auto t0 = Clock::now();
  res.selection = select_groups(instance, variant, res.total_capacity, options.exact, &res.selection_nodes);
  res.timings.selection_ms = elapsed_ms(t0);

  t0 = Clock::now();
  res.assignment = greedy_assign(instance, res.selection);
  res.timings.assignment_ms = elapsed_ms(t0);

  if (options.swap_opt) {
    t0 = Clock::now();
    res.assignment = swap_optimal(instance, std::move(res.assignment), &res.local_search);
    res.timings.swap_opt_ms = elapsed_ms(t0);
    res.swap_opt_applied = true;
  }
  res.metrics = metrics(instance, res.selection, res.assignment);
  return res;
}

std::vector<Variant> default_best_variants(const Instance& instance) {
  return {Variant::lp(), Variant::kp(), Variant::two_mkp(), Variant::three_mkp(),
          Variant::mkp_d_fractions(instance.max_capacity(), 100)};
}

SolveResult run_best(const Instance& instance, const std::vector<Variant>& variants, const RunOptions& options) {
  if (variants.empty()) throw InputError("run_best: no variants given");
  std::optional<SolveResult> best;
  StageTimings total;
  for (const Variant& v : variants) {
    SolveResult r = run_algorithm(instance, v, options);
    total.selection_ms += r.timings.selection_ms;
    total.assignment_ms += r.timings.assignment_ms;
    total.swap_opt_ms += r.timings.swap_opt_ms;
    const bool better = !best || r.metrics.max_exceeded < best->metrics.max_exceeded ||
                        (r.metrics.max_exceeded == best->metrics.max_exceeded && r.metrics.reward > best->metrics.reward);
    if (better) best = std::move(r);
  }
  best->algorithm = "best:" + best->algorithm;
  best->timings = total;
  return *best;
}

std::optional<std::int64_t> common_power_base(std::span<const std::int64_t> values) {
  std::set<std::int64_t> distinct(values.begin(), values.end());
  if (distinct.empty() || *distinct.begin() < 1) return std::nullopt;
  distinct.erase(1);
  if (distinct.empty()) return 2;
  const std::int64_t smallest = *distinct.begin();
  auto is_power_of = [](std::int64_t v, std::int64_t a) {
    while (v % a == 0) v /= a;
    return v == 1;
  };
  // smallest = a^e for some e >= 1; try every integer root, largest base first.
  for (int e = 1; (std::int64_t{1} << e) <= smallest && e < 63; ++e) {
    std::int64_t lo = 2;
    std::int64_t hi = smallest;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      __int128 p = 1;
      for (int i = 0; i < e && p <= smallest; ++i) p *= mid;
      if (p >= smallest) hi = mid; else lo = mid + 1;
    }
    __int128 p = 1;
    for (int i = 0; i < e; ++i) p *= lo;
    if (p != smallest) continue;
    if (std::all_of(distinct.begin(), distinct.end(), [&](std::int64_t v) { return is_power_of(v, lo); })) return lo;
  }
  return std::nullopt;
}

GuaranteeReport check_guarantees(const SolveResult& result, const Instance& instance,
                                 std::optional<std::int64_t> oracle_reward) {
  GuaranteeReport rep;
  if (result.total_capacity != instance.total_capacity()) {
    rep.applicable = false;
    rep.beta_case = "total capacity overridden";
    return rep;
  }

  const bool equal = instance.equal_capacities();
  const std::int64_t c_max = instance.max_capacity();
  std::vector<std::int64_t> all_values = instance.capacities;
  all_values.insert(all_values.end(), instance.item_weights.begin(), instance.item_weights.end());
  const bool powers = common_power_base(all_values).has_value();
  const bool all_heavy = std::all_of(instance.item_weights.begin(), instance.item_weights.end(),
                                     [&](std::int64_t w) { return 2 * w > c_max; });

  switch (result.variant.algorithm) {
    case Algorithm::LP:
      rep.beta = Rational(2);
      rep.beta_case = "LP";
      break;
    case Algorithm::KP:
      if (equal && powers) {
        rep.beta = Rational(0);
        rep.beta_case = "KP, equal capacities, powers of a common base";
      } else {
        rep.beta = Rational(1);
        rep.beta_case = "KP";
      }
      break;
    case Algorithm::TwoMKP:
      if (equal && all_heavy) {
        rep.beta = Rational(0);
        rep.beta_case = "2mKP, equal capacities, all items above c_max/2";
      } else {
        rep.beta = Rational(1, 2);
        rep.beta_case = "2mKP";
      }
      break;
    case Algorithm::ThreeMKP:
      rep.beta = equal ? Rational(1, 3) : Rational(1, 2);
      rep.beta_case = equal ? "3mKP, equal capacities" : "3mKP";
      break;
    case Algorithm::MkpD: {
      const auto& d = result.variant.thresholds;
      const bool has_half = std::find(d.begin(), d.end(), Rational(c_max, 2)) != d.end();
      const bool has_third = std::find(d.begin(), d.end(), Rational(c_max, 3)) != d.end();
      if (has_half && has_third && equal) {
        rep.beta = Rational(1, 3);
        rep.beta_case = "mKP_D with c_max/2, c_max/3, equal capacities";
      } else if (has_half) {
        rep.beta = Rational(1, 2);
        rep.beta_case = "mKP_D with c_max/2";
      } else {
        rep.beta = Rational(1);
        rep.beta_case = "mKP_D, aggregate row only";
      }
      break;
    }
    case Algorithm::MkpPrime:
      if (powers) {
        rep.beta = Rational(0);
        rep.beta_case = "mKP', powers of a common base";
      } else {
        rep.beta = Rational(1);
        rep.beta_case = "mKP', aggregate row only";
      }
      break;
  }

  const Rational exceeded(result.metrics.max_exceeded);
  rep.beta_holds = exceeded <= rep.beta * Rational(c_max);
  if (!rep.beta_holds) {
    rep.violations.push_back("max_exceeded " + std::to_string(result.metrics.max_exceeded) + " > " +
                             rep.beta.str() + " * " + std::to_string(c_max) + " (" + rep.beta_case + ")");
  }
  if (oracle_reward) {
    rep.alpha_holds = result.metrics.reward >= *oracle_reward;
    if (!*rep.alpha_holds) {
      rep.violations.push_back("reward " + std::to_string(result.metrics.reward) + " < v* " +
                               std::to_string(*oracle_reward));
    }
  }
  return rep;
}

}  // namespace gmkp
