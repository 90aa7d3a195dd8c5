#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gmkp/model.hpp"
#include "gmkp/rational.hpp"

namespace gmkp {

/// Seeded 64-bit generator used by every random step. Built on
/// std::mt19937_64, whose output sequence is fixed by the C++ standard; the
/// distributions below are written out by hand so results are bit-identical
/// across standard libraries.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive per-instance seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

using UnitPoint = std::array<double, 6>;

/// Classic Latin hypercube: in every dimension the points fall one per
/// equal-width stratum of [0, 1).
std::vector<UnitPoint> latin_hypercube(std::size_t count, std::uint64_t seed);

struct GeneratorParams {
  std::int64_t m = 2;
  std::int64_t w_split = 1;
  std::int64_t w_min = 1;
  std::int64_t w_mode = 1;
  Rational r_load{1};
  Rational r_conc{0};
  std::int64_t capacity = 100;
  std::uint64_t seed = 0;

  std::int64_t w_max() const { return w_min + w_split; }
  /// Empty when all parameter invariants hold.
  std::vector<std::string> violations() const;
};

/// Maps a unit point to parameters: m in [2, 100], w_split in [1, capacity-1],
/// w_min in [1, min(capacity/2, capacity - w_split)], w_mode in [w_min, w_max],
/// r_load in [1, 20], r_conc in [0, 1]. Ratios are rounded to 1e-6.
GeneratorParams materialize(const UnitPoint& u, std::int64_t capacity = 100);

/// Builds an equal-capacity instance: items w_min and w_max, then discretized
/// triangular(w_min, w_mode, w_max) weights until the load ratio reaches
/// r_load; k = ceil(n (1 - r_conc)) groups seeded with one item each; every
/// further item joins a uniformly drawn group that stays within m * capacity,
/// or opens a new group. Rewards are group weights.
Instance generate_instance(const GeneratorParams& params);

/// Discretized triangular draw: inverse CDF, rounded to nearest, clamped.
std::int64_t sample_triangular(Rng& rng, std::int64_t lo, std::int64_t mode, std::int64_t hi);

enum class RewardTag { R0, R1, R2, R3 };

struct RewardScheme {
  RewardTag tag = RewardTag::R0;
  std::uint64_t seed = 0;
};

std::string to_string(RewardTag tag);
RewardTag parse_reward_tag(const std::string& text);

/// Replaces rewards, with p0 the total group weight:
/// R0 = p0, R1 = round(100 sqrt(p0)), R2 = round(p0 sqrt(p0)),
/// R3 = round(U * p0) with U uniform on [1, 10) per group.
Instance apply_reward_scheme(const Instance& instance, const RewardScheme& scheme);

}  // namespace gmkp
