#include "gmkp/subset_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "gmkp/errors.hpp"

namespace gmkp {

std::int64_t f_d(std::int64_t y, const Rational& d) {
  if (y < 1) throw InputError("f_d: y must be positive");
  if (d <= Rational(0)) throw InputError("f_d: d must be positive");
  const __int128 numer = static_cast<__int128>(y) * d.den() - 1;
  return static_cast<std::int64_t>(numer / d.num());
}

std::string RowTag::str() const {
  switch (kind) {
    case RowKind::Aggregate: return "aggregate";
    case RowKind::Threshold: return "f(" + d.str() + ")";
    case RowKind::Floor: return "floor(" + d.str() + ")";
  }
  return "?";
}

bool SelectionProblem::feasible(const Selection& selection) const {
  for (const ProblemRow& row : rows) {
    std::int64_t lhs = 0;
    for (Index l = 0; l < selection.size(); ++l) {
      if (selection[l]) lhs += row.coeffs[l];
    }
    if (lhs > row.rhs) return false;
  }
  return true;
}

std::int64_t SelectionProblem::value(const Selection& selection) const {
  std::int64_t total = 0;
  for (Index l = 0; l < selection.size(); ++l) {
    if (selection[l]) total += group_rewards[l];
  }
  return total;
}

std::vector<Rational> canonical_D(const Instance& instance) {
  const Rational w_max(instance.max_weight());
  const auto m = static_cast<std::int64_t>(instance.num_knapsacks());
  std::set<Rational> found;
  std::set<std::int64_t> seen_caps;
  for (const std::int64_t c : instance.capacities) {
    if (!seen_caps.insert(c).second) continue;
    for (std::int64_t q = 1; q <= c * m; ++q) {
      Rational d(c, q);
      if (d < w_max) found.insert(d);
    }
  }
  return {found.begin(), found.end()};
}

namespace {

ProblemRow threshold_row(const Instance& inst, const Rational& d) {
  ProblemRow row;
  row.tag = {RowKind::Threshold, d};
  row.coeffs.assign(inst.num_groups(), 0);
  for (Index l = 0; l < inst.num_groups(); ++l) {
    for (const Index j : inst.groups[l]) row.coeffs[l] += f_d(inst.item_weights[j], d);
  }
  for (const std::int64_t c : inst.capacities) row.rhs += f_d(c, d);
  return row;
}

ProblemRow floor_row(const Instance& inst, std::int64_t d) {
  ProblemRow row;
  row.tag = {RowKind::Floor, Rational(d)};
  row.coeffs.assign(inst.num_groups(), 0);
  for (Index l = 0; l < inst.num_groups(); ++l) {
    for (const Index j : inst.groups[l]) row.coeffs[l] += inst.item_weights[j] / d;
  }
  for (const std::int64_t c : inst.capacities) row.rhs += c / d;
  return row;
}

void push_row(SelectionProblem& problem, ProblemRow row) {
  if (std::all_of(row.coeffs.begin(), row.coeffs.end(), [](std::int64_t a) { return a == 0; })) return;
  for (const ProblemRow& existing : problem.rows) {
    if (existing.rhs == row.rhs && existing.coeffs == row.coeffs) return;
  }
  problem.rows.push_back(std::move(row));
}

}  // namespace

SelectionProblem build_problem(const Instance& inst, const Variant& variant, std::int64_t total_capacity) {
  if (variant.algorithm == Algorithm::LP) throw InputError("build_problem: the LP variant has no selection problem");
  if (total_capacity < 0) throw InputError("build_problem: total capacity must be non-negative");

  SelectionProblem problem;
  problem.group_rewards = inst.rewards;
  ProblemRow aggregate;
  aggregate.tag = {RowKind::Aggregate, Rational(0)};
  aggregate.coeffs = inst.group_weights();
  aggregate.rhs = total_capacity;
  problem.rows.push_back(std::move(aggregate));

  const std::int64_t c_max = inst.max_capacity();
  switch (variant.algorithm) {
    case Algorithm::LP:
    case Algorithm::KP:
      break;
    case Algorithm::TwoMKP:
      push_row(problem, threshold_row(inst, Rational(c_max, 2)));
      break;
    case Algorithm::ThreeMKP:
      push_row(problem, threshold_row(inst, Rational(c_max, 2)));
      push_row(problem, threshold_row(inst, Rational(c_max, 3)));
      break;
    case Algorithm::MkpD:
      for (const Rational& d : variant.thresholds) {
        if (d <= Rational(0)) throw InputError("build_problem: thresholds must be positive");
        push_row(problem, threshold_row(inst, d));
      }
      break;
    case Algorithm::MkpPrime: {
      const std::int64_t c_min = inst.min_capacity();
      std::set<std::int64_t> heavy;
      for (const std::int64_t w : inst.item_weights) {
        if (w > c_min) heavy.insert(w);
      }
      for (const std::int64_t d : heavy) push_row(problem, floor_row(inst, d));
      break;
    }
  }
  return problem;
}

Selection solve_dp_single_row(const SelectionProblem& problem) {
  if (problem.rows.size() != 1) {
    throw InputError("solve_dp_single_row: expected exactly one row, got " + std::to_string(problem.rows.size()));
  }
  const ProblemRow& row = problem.rows.front();
  if (row.rhs < 0) throw InputError("solve_dp_single_row: negative right-hand side");
  const Index k = problem.num_groups();
  const auto cap = static_cast<Index>(row.rhs);

  std::vector<std::int64_t> best(cap + 1, 0);
  std::vector<std::vector<bool>> take(k, std::vector<bool>(cap + 1, false));
  for (Index l = 0; l < k; ++l) {
    const std::int64_t a = row.coeffs[l];
    if (a > row.rhs) continue;
    const auto ua = static_cast<Index>(a);
    for (Index c = cap + 1; c-- > ua;) {
      const std::int64_t with = best[c - ua] + problem.group_rewards[l];
      if (with > best[c]) {
        best[c] = with;
        take[l][c] = true;
      }
    }
  }
  Selection sel(k);
  Index c = cap;
  for (Index l = k; l-- > 0;) {
    if (take[l][c]) {
      sel.chosen[l] = true;
      c -= static_cast<Index>(row.coeffs[l]);
    }
  }
  return sel;
}

Selection solve_dp_two_rows(const SelectionProblem& problem) {
  if (problem.rows.size() == 1) return solve_dp_single_row(problem);
  if (problem.rows.size() != 2) {
    throw InputError("solve_dp_two_rows: expected one or two rows, got " + std::to_string(problem.rows.size()));
  }
  const ProblemRow& r0 = problem.rows[0];
  const ProblemRow& r1 = problem.rows[1];
  if (r0.rhs < 0 || r1.rhs < 0) throw InputError("solve_dp_two_rows: negative right-hand side");
  const Index k = problem.num_groups();
  const auto n0 = static_cast<Index>(r0.rhs) + 1;
  const auto n1 = static_cast<Index>(r1.rhs) + 1;
  if (static_cast<double>(n0) * static_cast<double>(n1) * static_cast<double>(k + 1) > 4e8) {
    throw InputError("solve_dp_two_rows: state space too large");
  }
  std::vector<std::int64_t> best(n0 * n1, 0);
  std::vector<bool> take(k * n0 * n1, false);
  for (Index l = 0; l < k; ++l) {
    const std::int64_t a0 = r0.coeffs[l];
    const std::int64_t a1 = r1.coeffs[l];
    if (a0 > r0.rhs || a1 > r1.rhs) continue;
    const auto u0 = static_cast<Index>(a0);
    const auto u1 = static_cast<Index>(a1);
    for (Index c0 = n0; c0-- > u0;) {
      for (Index c1 = n1; c1-- > u1;) {
        const std::int64_t with = best[(c0 - u0) * n1 + (c1 - u1)] + problem.group_rewards[l];
        if (with > best[c0 * n1 + c1]) {
          best[c0 * n1 + c1] = with;
          take[(l * n0 + c0) * n1 + c1] = true;
        }
      }
    }
  }
  Selection sel(k);
  Index c0 = n0 - 1;
  Index c1 = n1 - 1;
  for (Index l = k; l-- > 0;) {
    if (take[(l * n0 + c0) * n1 + c1]) {
      sel.chosen[l] = true;
      c0 -= static_cast<Index>(r0.coeffs[l]);
      c1 -= static_cast<Index>(r1.coeffs[l]);
    }
  }
  return sel;
}

namespace {

constexpr std::size_t kMaxDpEntries = std::size_t{8} << 20;
constexpr std::size_t kMaxFractionalRows = 4;

/// Three-way ratio order reward/coeff, descending; zero coefficients first.
int ratio_cmp(std::int64_t pa, std::int64_t aa, std::int64_t pb, std::int64_t ab) {
  if (aa == 0 || ab == 0) {
    if ((aa == 0) != (ab == 0)) return aa == 0 ? -1 : 1;
    return 0;
  }
  const __int128 lhs = static_cast<__int128>(pa) * ab;
  const __int128 rhs = static_cast<__int128>(pb) * aa;
  if (lhs != rhs) return lhs > rhs ? -1 : 1;
  return 0;
}

bool ratio_before(std::int64_t pa, std::int64_t aa, Index ia, std::int64_t pb, std::int64_t ab, Index ib) {
  const int c = ratio_cmp(pa, aa, pb, ab);
  return c != 0 ? c < 0 : ia < ib;
}

struct LpSolution {
  std::vector<double> duals;   // per row
  std::vector<double> primal;  // per listed group
};

/// Solves max p z s.t. A z <= b, 0 <= z <= 1 over the listed groups by a
/// dense bounded-variable primal simplex. Floating point; only used to pick
/// multipliers and a branching order. Empty result if it does not converge.
LpSolution solve_lp(const SelectionProblem& problem, const std::vector<Index>& groups) {
  constexpr double kEps = 1e-9;
  const Index rows = problem.rows.size();
  const Index n = groups.size();
  const Index cols = n + rows;
  // Tableau rows 0..rows-1, objective row `rows`; column j < n is group
  // groups[j], column n + r the slack of row r.
  std::vector<double> t((rows + 1) * cols, 0.0);
  auto at = [&](Index r, Index c) -> double& { return t[r * cols + c]; };
  std::vector<double> value(rows);
  std::vector<Index> basis(rows);
  std::vector<char> at_upper(cols, 0);
  for (Index r = 0; r < rows; ++r) {
    for (Index j = 0; j < n; ++j) at(r, j) = static_cast<double>(problem.rows[r].coeffs[groups[j]]);
    at(r, n + r) = 1.0;
    value[r] = static_cast<double>(problem.rows[r].rhs);
    basis[r] = n + r;
  }
  // Objective row holds reduced costs d_j = p_j - c_B B^-1 A_j.
  for (Index j = 0; j < n; ++j) at(rows, j) = static_cast<double>(problem.group_rewards[groups[j]]);
  std::vector<char> is_basic(cols, 0);
  for (Index r = 0; r < rows; ++r) is_basic[n + r] = 1;
  auto upper = [&](Index c) { return c < n ? 1.0 : std::numeric_limits<double>::infinity(); };

  const std::size_t max_iter = 50 * cols + 1000;
  for (std::size_t iter = 0;; ++iter) {
    if (iter == max_iter) return {};
    Index enter = cols;
    double best = kEps;
    for (Index c = 0; c < cols; ++c) {
      if (is_basic[c]) continue;
      const double d = at(rows, c);
      const double gain = at_upper[c] ? -d : d;
      if (gain > best) {
        best = gain;
        enter = c;
      }
    }
    if (enter == cols) break;
    // Moving the entering variable by +step (or -step from its upper bound)
    // changes basic variable r by -dir * step * column entry.
    const double dir = at_upper[enter] ? -1.0 : 1.0;
    double step = upper(enter);
    Index leave = rows;
    bool leave_to_upper = false;
    for (Index r = 0; r < rows; ++r) {
      const double a = dir * at(r, enter);
      if (a > kEps) {
        const double lim = value[r] / a;
        if (lim < step) {
          step = lim;
          leave = r;
          leave_to_upper = false;
        }
      } else if (a < -kEps && upper(basis[r]) < std::numeric_limits<double>::infinity()) {
        const double lim = (upper(basis[r]) - value[r]) / -a;
        if (lim < step) {
          step = lim;
          leave = r;
          leave_to_upper = true;
        }
      }
    }
    if (step == std::numeric_limits<double>::infinity()) return {};
    for (Index r = 0; r < rows; ++r) value[r] -= dir * step * at(r, enter);
    if (leave == rows) {
      at_upper[enter] = !at_upper[enter];
      continue;
    }
    const double entering_value = at_upper[enter] ? upper(enter) - step : step;
    const Index old = basis[leave];
    const double pivot = at(leave, enter);
    for (Index c = 0; c < cols; ++c) at(leave, c) /= pivot;
    for (Index r = 0; r <= rows; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (Index c = 0; c < cols; ++c) at(r, c) -= factor * at(leave, c);
    }
    value[leave] = entering_value;
    basis[leave] = enter;
    is_basic[enter] = 1;
    at_upper[enter] = 0;
    is_basic[old] = 0;
    at_upper[old] = leave_to_upper ? 1 : 0;
  }
  LpSolution out;
  out.duals.resize(rows);
  for (Index r = 0; r < rows; ++r) out.duals[r] = std::max(0.0, -at(rows, n + r));
  out.primal.resize(n);
  for (Index j = 0; j < n; ++j) out.primal[j] = at_upper[j] ? 1.0 : 0.0;
  for (Index r = 0; r < rows; ++r) {
    if (basis[r] < n) out.primal[basis[r]] = value[r];
  }
  return out;
}

class BranchAndBound {
 public:
  BranchAndBound(const SelectionProblem& problem, const ExactOptions& options)
      : problem_(problem), budget_(options.node_budget.value_or(std::numeric_limits<std::uint64_t>::max())) {
    const Index k = problem.num_groups();
    for (const ProblemRow& row : problem.rows) {
      if (row.rhs < 0) throw InputError("solve_exact: negative right-hand side");
      if (row.coeffs.size() != k) throw InputError("solve_exact: row length differs from group count");
    }
    for (Index l = 0; l < k; ++l) {
      bool fits = true;
      for (const ProblemRow& row : problem.rows) fits = fits && row.coeffs[l] <= row.rhs;
      if (fits && problem.group_rewards[l] > 0) order_.push_back(l);
    }
    const ProblemRow& r0 = problem.rows.front();
    // Identical groups (same reward and coefficients) end up adjacent.
    auto same = [&](Index a, Index b) {
      if (problem.group_rewards[a] != problem.group_rewards[b]) return false;
      for (const ProblemRow& row : problem.rows) {
        if (row.coeffs[a] != row.coeffs[b]) return false;
      }
      return true;
    };
    std::sort(order_.begin(), order_.end(), [&](Index a, Index b) {
      if (const int c = ratio_cmp(problem.group_rewards[a], r0.coeffs[a], problem.group_rewards[b], r0.coeffs[b]); c != 0) {
        return c < 0;
      }
      if (problem.group_rewards[a] != problem.group_rewards[b]) return problem.group_rewards[a] > problem.group_rewards[b];
      for (const ProblemRow& row : problem.rows) {
        if (row.coeffs[a] != row.coeffs[b]) return row.coeffs[a] < row.coeffs[b];
      }
      return a < b;
    });
    // With several rows, branch on the groups the root LP takes first, then
    // by reward per unit of the multiplier-weighted row sum.
    if (problem.rows.size() >= 2) lagrangian_setup();
    if (!lag_u_.empty()) {
      std::stable_sort(order_.begin(), order_.end(), [&](Index a, Index b) {
        const __int128 sa = surrogate(a);
        const __int128 sb = surrogate(b);
        const int ba = lp_bucket(a);
        const int bb = lp_bucket(b);
        if (ba != bb) return ba > bb;
        if (sa == 0 || sb == 0) return sa == 0 && sb != 0;
        const __int128 lhs = static_cast<__int128>(problem.group_rewards[a]) * sb;
        const __int128 rhs = static_cast<__int128>(problem.group_rewards[b]) * sa;
        if (lhs != rhs) return lhs > rhs;
        return secondary_use(a) < secondary_use(b);
      });
    }
    class_end_.assign(order_.size(), order_.size());
    for (Index pos = order_.size(); pos-- > 0;) {
      if (pos + 1 < order_.size() && same(order_[pos], order_[pos + 1])) class_end_[pos] = class_end_[pos + 1];
      else class_end_[pos] = pos + 1;
    }

    const Index depth = order_.size();
    row_orders_.resize(problem.rows.size());
    for (Index r = 0; r < problem.rows.size(); ++r) {
      const ProblemRow& row = problem.rows[r];
      std::vector<Index> positions(depth);
      std::iota(positions.begin(), positions.end(), Index{0});
      std::sort(positions.begin(), positions.end(), [&](Index a, Index b) {
        const Index la = order_[a];
        const Index lb = order_[b];
        return ratio_before(problem.group_rewards[la], row.coeffs[la], a, problem.group_rewards[lb], row.coeffs[lb], b);
      });
      row_orders_[r] = std::move(positions);
    }

    const auto cap0 = static_cast<std::size_t>(r0.rhs);
    if ((depth + 1) <= kMaxDpEntries / (cap0 + 1)) {
      width_ = cap0 + 1;
      suffix_.assign((depth + 1) * width_, 0);
      for (Index pos = depth; pos-- > 0;) {
        const Index l = order_[pos];
        const auto a = static_cast<std::size_t>(r0.coeffs[l]);
        // With multipliers, rows 1.. are priced into the reward (scaled by
        // lag_scale_) and only row 0 is kept as a hard constraint.
        std::int64_t p = problem.group_rewards[l];
        if (!lag_u_.empty()) {
          __int128 q = static_cast<__int128>(lag_scale_) * p;
          for (Index r = 1; r < problem.rows.size(); ++r) q -= static_cast<__int128>(lag_u_[r]) * problem.rows[r].coeffs[l];
          p = static_cast<std::int64_t>(std::max<__int128>(q, 0));
        }
        const std::int64_t* next = &suffix_[(pos + 1) * width_];
        std::int64_t* cur = &suffix_[pos * width_];
        for (std::size_t c = 0; c < width_; ++c) {
          cur[c] = next[c];
          if (c >= a) cur[c] = std::max(cur[c], next[c - a] + p);
        }
      }
    }

    if (!lag_u_.empty()) {
      lag_suffix_.assign(depth + 1, 0);
      for (Index pos = depth; pos-- > 0;) {
        const Index l = order_[pos];
        const __int128 reduced = static_cast<__int128>(lag_scale_) * problem.group_rewards[l] - surrogate(l);
        lag_suffix_[pos] = lag_suffix_[pos + 1] + std::max<__int128>(reduced, 0);
      }
    }

    residual_.resize(problem.rows.size());
    for (Index r = 0; r < problem.rows.size(); ++r) residual_[r] = problem.rows[r].rhs;
    current_.assign(k, false);
    best_ = Selection(k);
  }

  Selection run(ExactStats* stats) {
    dfs(0, 0);
    if (stats) {
      stats->nodes = nodes_;
      stats->dp_bound = !suffix_.empty();
    }
    return best_;
  }

 private:
  std::int64_t fractional_bound(Index r, Index pos) const {
    const ProblemRow& row = problem_.rows[r];
    std::int64_t room = residual_[r];
    std::int64_t total = 0;
    for (const Index p : row_orders_[r]) {
      if (p < pos) continue;
      const Index l = order_[p];
      const std::int64_t a = row.coeffs[l];
      const std::int64_t reward = problem_.group_rewards[l];
      if (a <= room) {
        room -= a;
        total += reward;
      } else {
        total += static_cast<std::int64_t>(static_cast<__int128>(reward) * room / a);
        break;
      }
    }
    return total;
  }

  /// Multipliers u >= 0 for the Lagrangian bound
  ///   sum_r u_r residual_r + sum_{suffix} max(0, p_l - sum_r u_r a_rl):
  /// the optimal duals of the root LP, scaled to integers so the bound itself
  /// is evaluated exactly. Falls back to pricing row 0 alone.
  void lagrangian_setup() {
    const Index rows = problem_.rows.size();
    if (order_.empty()) return;

    LpSolution lp = solve_lp(problem_, order_);
    std::vector<double> u = lp.duals;
    lp_value_.assign(problem_.num_groups(), 0.0);
    for (Index j = 0; j < lp.primal.size(); ++j) lp_value_[order_[j]] = lp.primal[j];
    if (u.empty()) {
      u.assign(rows, 0.0);
      const ProblemRow& r0 = problem_.rows.front();
      std::int64_t room = r0.rhs;
      for (const Index l : order_) {
        if (r0.coeffs[l] <= room) {
          room -= r0.coeffs[l];
          continue;
        }
        u[0] = static_cast<double>(problem_.group_rewards[l]) / static_cast<double>(r0.coeffs[l]);
        break;
      }
    }

    double top = 0;
    for (const double x : u) top = std::max(top, x);
    if (top <= 0) return;
    double reward_sum = 1;
    for (const Index l : order_) reward_sum += static_cast<double>(problem_.group_rewards[l]);
    const double scale = std::min(static_cast<double>(std::int64_t{1} << 30) / std::max(top, 1.0),
                                  static_cast<double>(std::int64_t{1} << 60) / reward_sum);
    lag_scale_ = static_cast<std::int64_t>(std::max(1.0, std::floor(scale)));
    lag_u_.resize(rows);
    for (Index r = 0; r < rows; ++r) {
      lag_u_[r] = static_cast<std::int64_t>(std::llround(std::max(u[r], 0.0) * static_cast<double>(lag_scale_)));
    }
  }

  /// 2 for groups at 1 in the root LP, 1 for fractional ones, 0 otherwise.
  int lp_bucket(Index l) const {
    if (lp_value_.empty()) return 0;
    if (lp_value_[l] >= 1.0 - 1e-6) return 2;
    return lp_value_[l] > 1e-6 ? 1 : 0;
  }

  /// Share of the other rows' right-hand sides a group uses up.
  double secondary_use(Index l) const {
    double total = 0;
    for (Index r = 1; r < problem_.rows.size(); ++r) {
      const ProblemRow& row = problem_.rows[r];
      if (row.rhs > 0) total += static_cast<double>(row.coeffs[l]) / static_cast<double>(row.rhs);
    }
    return total;
  }

  __int128 surrogate(Index l) const {
    __int128 total = 0;
    for (Index r = 0; r < lag_u_.size(); ++r) total += static_cast<__int128>(lag_u_[r]) * problem_.rows[r].coeffs[l];
    return total;
  }

  std::int64_t dp_bound(Index pos, std::int64_t value) const {
    const std::int64_t tail = suffix_[pos * width_ + static_cast<std::size_t>(residual_[0])];
    if (lag_u_.empty()) return value + tail;
    __int128 total = static_cast<__int128>(lag_scale_) * value + tail;
    for (Index r = 1; r < lag_u_.size(); ++r) total += static_cast<__int128>(lag_u_[r]) * residual_[r];
    return static_cast<std::int64_t>(total / lag_scale_);
  }

  /// Upper bound on the best value reachable below this node.
  std::int64_t lagrangian_bound(Index pos, std::int64_t value) const {
    __int128 total = static_cast<__int128>(lag_scale_) * value + lag_suffix_[pos];
    for (Index r = 0; r < lag_u_.size(); ++r) total += static_cast<__int128>(lag_u_[r]) * residual_[r];
    return static_cast<std::int64_t>(total / lag_scale_);
  }

  void dfs(Index pos, std::int64_t value) {
    if (++nodes_ > budget_) throw BudgetExceeded("solve_exact: node budget of " + std::to_string(budget_) + " exhausted");
    if (value > best_value_) {
      best_value_ = value;
      best_.chosen = current_;
    }
    if (pos == order_.size()) return;

    if (!lag_suffix_.empty() && lagrangian_bound(pos, value) <= best_value_) return;
    if (suffix_.empty()) {
      if (value + fractional_bound(0, pos) <= best_value_) return;
    } else if (dp_bound(pos, value) <= best_value_) {
      return;
    }
    // Per-row fractional bounds cost O(k) each; with many rows the
    // multiplier bound above carries the pruning on its own.
    if (lag_u_.empty() || problem_.rows.size() <= kMaxFractionalRows) {
      for (Index r = 1; r < problem_.rows.size(); ++r) {
        if (value + fractional_bound(r, pos) <= best_value_) return;
      }
    }

    const Index l = order_[pos];
    bool fits = true;
    for (Index r = 0; r < problem_.rows.size() && fits; ++r) fits = problem_.rows[r].coeffs[l] <= residual_[r];
    if (fits) {
      for (Index r = 0; r < problem_.rows.size(); ++r) residual_[r] -= problem_.rows[r].coeffs[l];
      current_[l] = true;
      dfs(pos + 1, value + problem_.group_rewards[l]);
      current_[l] = false;
      for (Index r = 0; r < problem_.rows.size(); ++r) residual_[r] += problem_.rows[r].coeffs[l];
    }
    // Leaving out one copy of a group leaves out the remaining copies too;
    // any other choice among identical groups is a relabelling.
    dfs(class_end_[pos], value);
  }

  const SelectionProblem& problem_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Index> order_;
  std::vector<Index> class_end_;
  std::vector<std::vector<Index>> row_orders_;
  std::vector<std::int64_t> suffix_;
  std::size_t width_ = 0;
  std::vector<std::int64_t> residual_;
  std::vector<std::int64_t> lag_u_;
  std::vector<double> lp_value_;
  std::vector<__int128> lag_suffix_;
  std::int64_t lag_scale_ = 1;
  std::vector<bool> current_;
  Selection best_;
  std::int64_t best_value_ = 0;
};

}  // namespace

Selection solve_exact(const SelectionProblem& problem, const ExactOptions& options, ExactStats* stats) {
  if (problem.rows.empty()) throw InputError("solve_exact: problem has no rows");
  BranchAndBound bnb(problem, options);
  return bnb.run(stats);
}

}  // namespace gmkp
