#include "gmkp/gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "gmkp/errors.hpp"

namespace gmkp {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvariantViolation("Rng::uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return lo + static_cast<std::int64_t>(x % span);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<UnitPoint> latin_hypercube(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InputError("latin_hypercube: count must be positive");
  Rng rng(seed);
  std::vector<UnitPoint> points(count);
  const double below_one = std::nextafter(1.0, 0.0);
  std::vector<std::size_t> perm(count);
  for (std::size_t dim = 0; dim < 6; ++dim) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = count; i-- > 1;) {
      const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)));
      std::swap(perm[i], perm[j]);
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double u = (static_cast<double>(perm[i]) + rng.uniform01()) / static_cast<double>(count);
      points[i][dim] = std::min(u, below_one);
    }
  }
  return points;
}

std::vector<std::string> GeneratorParams::violations() const {
  std::vector<std::string> out;
  if (m < 2) out.emplace_back("m < 2");
  if (capacity < 2) out.emplace_back("capacity < 2");
  if (w_split < 1) out.emplace_back("w_split < 1");
  if (w_min < 1 || w_min > std::min(capacity / 2, capacity - w_split)) out.emplace_back("w_min out of range");
  if (w_mode < w_min || w_mode > w_max()) out.emplace_back("w_mode out of [w_min, w_max]");
  if (w_max() > capacity) out.emplace_back("w_max above capacity");
  if (r_load <= Rational(0) || r_load > Rational(20)) out.emplace_back("r_load out of (0, 20]");
  if (r_conc < Rational(0) || r_conc > Rational(1)) out.emplace_back("r_conc out of [0, 1]");
  return out;
}

GeneratorParams materialize(const UnitPoint& u, std::int64_t capacity) {
  if (capacity < 2) throw InputError("materialize: capacity must be at least 2");
  for (const double x : u) {
    if (!(x >= 0.0 && x < 1.0)) throw InputError("materialize: coordinates must lie in [0, 1)");
  }
  auto scaled = [](double x, std::int64_t n) { return static_cast<std::int64_t>(std::floor(x * static_cast<double>(n))); };
  constexpr std::int64_t kScale = 1'000'000;

  GeneratorParams p;
  p.capacity = capacity;
  p.m = std::clamp<std::int64_t>(2 + scaled(u[0], 99), 2, 100);
  p.w_split = std::clamp<std::int64_t>(1 + scaled(u[1], capacity - 1), 1, capacity - 1);
  const std::int64_t w_min_hi = std::min(capacity / 2, capacity - p.w_split);
  p.w_min = std::clamp<std::int64_t>(1 + scaled(u[2], w_min_hi), 1, w_min_hi);
  p.w_mode = std::clamp<std::int64_t>(p.w_min + scaled(u[3], p.w_split + 1), p.w_min, p.w_max());
  p.r_load = Rational(std::llround((1.0 + 19.0 * u[4]) * kScale), kScale);
  p.r_conc = Rational(std::llround(u[5] * kScale), kScale);
  return p;
}

std::int64_t sample_triangular(Rng& rng, std::int64_t lo, std::int64_t mode, std::int64_t hi) {
  if (lo == hi) return lo;
  const double a = static_cast<double>(lo);
  const double b = static_cast<double>(hi);
  const double c = static_cast<double>(mode);
  const double u = rng.uniform01();
  const double fc = (c - a) / (b - a);
  const double x = u < fc ? a + std::sqrt(u * (b - a) * (c - a)) : b - std::sqrt((1.0 - u) * (b - a) * (b - c));
  return std::clamp<std::int64_t>(std::llround(x), lo, hi);
}

namespace {

/// Groups bucketed by current weight, with a Fenwick tree over bucket sizes
/// so that "a uniformly random group of weight <= limit" is O(log W).
class GroupPool {
 public:
  explicit GroupPool(std::int64_t max_weight)
      : buckets_(static_cast<std::size_t>(max_weight) + 1), tree_(static_cast<std::size_t>(max_weight) + 2, 0) {}

  void add(Index group, std::int64_t weight) {
    auto& bucket = buckets_[static_cast<std::size_t>(weight)];
    if (position_.size() <= group) position_.resize(group + 1, 0);
    position_[group] = bucket.size();
    bucket.push_back(group);
    update(weight, +1);
  }

  void remove(Index group, std::int64_t weight) {
    auto& bucket = buckets_[static_cast<std::size_t>(weight)];
    const Index pos = position_[group];
    bucket[pos] = bucket.back();
    position_[bucket[pos]] = pos;
    bucket.pop_back();
    update(weight, -1);
  }

  std::int64_t count_up_to(std::int64_t weight) const {
    std::int64_t sum = 0;
    for (auto i = static_cast<std::size_t>(weight) + 1; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  /// Group with 0-based rank `rank` in (weight, bucket position) order.
  Index nth(std::int64_t rank) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    std::int64_t remaining = rank + 1;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] < remaining) {
        pos += step;
        remaining -= tree_[pos];
      }
    }
    // pos is the 1-based Fenwick index of the last bucket before the target.
    return buckets_[pos][static_cast<std::size_t>(remaining - 1)];
  }

 private:
  void update(std::int64_t weight, std::int64_t delta) {
    for (auto i = static_cast<std::size_t>(weight) + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  std::vector<std::vector<Index>> buckets_;
  std::vector<std::int64_t> tree_;
  std::vector<Index> position_;
};

}  // namespace

Instance generate_instance(const GeneratorParams& params) {
  if (const auto bad = params.violations(); !bad.empty()) throw InputError("generate_instance: " + bad.front());
  Rng rng(params.seed);
  const std::int64_t total_capacity = params.m * params.capacity;

  std::vector<std::int64_t> weights{params.w_min, params.w_max()};
  std::int64_t total = params.w_min + params.w_max();
  auto below_target = [&] {
    return static_cast<__int128>(total) * params.r_load.den() < static_cast<__int128>(params.r_load.num()) * total_capacity;
  };
  while (below_target()) {
    const std::int64_t w = sample_triangular(rng, params.w_min, params.w_mode, params.w_max());
    weights.push_back(w);
    total += w;
  }

  const auto n = static_cast<std::int64_t>(weights.size());
  const Rational spread = Rational(n) * (Rational(1) - params.r_conc);
  const std::int64_t k0 = std::min(spread.ceil(), n);

  std::vector<std::vector<Index>> groups;
  std::vector<std::int64_t> group_weight;
  GroupPool pool(total_capacity);
  for (std::int64_t j = 0; j < k0; ++j) {
    groups.push_back({static_cast<Index>(j)});
    group_weight.push_back(weights[static_cast<std::size_t>(j)]);
    pool.add(groups.size() - 1, group_weight.back());
  }
  for (std::int64_t j = k0; j < n; ++j) {
    const std::int64_t w = weights[static_cast<std::size_t>(j)];
    const std::int64_t eligible = pool.count_up_to(total_capacity - w);
    if (eligible == 0) {
      groups.push_back({static_cast<Index>(j)});
      group_weight.push_back(w);
      pool.add(groups.size() - 1, w);
      continue;
    }
    const Index g = pool.nth(rng.uniform_int(0, eligible - 1));
    pool.remove(g, group_weight[g]);
    groups[g].push_back(static_cast<Index>(j));
    group_weight[g] += w;
    pool.add(g, group_weight[g]);
  }

  std::vector<Instance::GroupSpec> specs;
  specs.reserve(groups.size());
  for (Index g = 0; g < groups.size(); ++g) {
    Instance::GroupSpec spec{group_weight[g], {}};
    for (const Index j : groups[g]) spec.weights.push_back(weights[j]);
    specs.push_back(std::move(spec));
  }
  Instance inst = Instance::from_groups(std::vector<std::int64_t>(static_cast<std::size_t>(params.m), params.capacity), specs);

  nlohmann::json meta = {
      {"generator", "gmkp-gen/1"},
      {"rng", Rng::kName},
      {"seed", params.seed},
      {"m", params.m},
      {"w_split", params.w_split},
      {"w_min", params.w_min},
      {"w_mode", params.w_mode},
      {"r_load", params.r_load.str()},
      {"r_conc", params.r_conc.str()},
      {"capacity", params.capacity},
      {"reward_scheme", "R0"},
  };
  inst.meta = meta.dump();
  return inst;
}

std::string to_string(RewardTag tag) {
  switch (tag) {
    case RewardTag::R0: return "R0";
    case RewardTag::R1: return "R1";
    case RewardTag::R2: return "R2";
    case RewardTag::R3: return "R3";
  }
  return "?";
}

RewardTag parse_reward_tag(const std::string& text) {
  if (text == "R0" || text == "r0") return RewardTag::R0;
  if (text == "R1" || text == "r1") return RewardTag::R1;
  if (text == "R2" || text == "r2") return RewardTag::R2;
  if (text == "R3" || text == "r3") return RewardTag::R3;
  throw InputError("unknown reward scheme '" + text + "'");
}

namespace {

unsigned __int128 isqrt(unsigned __int128 n) {
  auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Nearest integer to sqrt(n); sqrt of an integer is never exactly x.5.
std::int64_t round_sqrt(unsigned __int128 n) {
  const unsigned __int128 r = isqrt(n);
  return static_cast<std::int64_t>(n - r * r > r ? r + 1 : r);
}

}  // namespace

Instance apply_reward_scheme(const Instance& instance, const RewardScheme& scheme) {
  Instance out = instance;
  Rng rng(scheme.seed);
  for (Index l = 0; l < out.num_groups(); ++l) {
    const auto p0 = static_cast<unsigned __int128>(instance.group_weight(l));
    switch (scheme.tag) {
      case RewardTag::R0:
        out.rewards[l] = static_cast<std::int64_t>(p0);
        break;
      case RewardTag::R1:
        out.rewards[l] = round_sqrt(p0 * 10000U);
        break;
      case RewardTag::R2:
        out.rewards[l] = round_sqrt(p0 * p0 * p0);
        break;
      case RewardTag::R3: {
        // U = 1 + 9 k / 2^53, so U p0 = p0 + 9 p0 k / 2^53; round half up.
        const unsigned __int128 k = rng.next() >> 11;
        const unsigned __int128 extra = (9U * p0 * k + (static_cast<unsigned __int128>(1) << 52)) >> 53;
        out.rewards[l] = static_cast<std::int64_t>(p0 + extra);
        break;
      }
    }
  }
  nlohmann::json meta = out.meta.empty() ? nlohmann::json::object() : nlohmann::json::parse(out.meta, nullptr, false);
  if (meta.is_object()) {
    meta["reward_scheme"] = to_string(scheme.tag);
    if (scheme.tag == RewardTag::R3) meta["reward_seed"] = scheme.seed;
    out.meta = meta.dump();
  }
  return out;
}

}  // namespace gmkp
