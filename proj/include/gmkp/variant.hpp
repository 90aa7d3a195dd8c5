#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gmkp/rational.hpp"

namespace gmkp {

/// Group-selection relaxation used by an algorithm run.
enum class Algorithm {
  LP,        // greedy LP relaxation
  KP,        // aggregate capacity row only
  TwoMKP,    // + f_{c_max/2} row
  ThreeMKP,  // + f_{c_max/2} and f_{c_max/3} rows
  MkpD,      // + one f_d row per threshold in an explicit set
  MkpPrime,  // + floor rows at weights above the smallest capacity
};

struct Variant {
  Algorithm algorithm = Algorithm::KP;
  /// Thresholds for MkpD; ignored otherwise.
  std::vector<Rational> thresholds;

  static Variant lp() { return {Algorithm::LP, {}}; }
  static Variant kp() { return {Algorithm::KP, {}}; }
  static Variant two_mkp() { return {Algorithm::TwoMKP, {}}; }
  static Variant three_mkp() { return {Algorithm::ThreeMKP, {}}; }
  static Variant mkp_prime() { return {Algorithm::MkpPrime, {}}; }
  static Variant mkp_d(std::vector<Rational> d) { return {Algorithm::MkpD, std::move(d)}; }
  /// {c/2, c/3, ..., c/count} for the given largest capacity c.
  static Variant mkp_d_fractions(std::int64_t c_max, std::int64_t count);

  /// Short name: lp, kp, 2mkp, 3mkp, mkpd, mkp-prime.
  std::string name() const;
  /// Inverse of name(); thresholds must be attached separately for mkpd.
  static Variant parse(std::string_view name);

  friend bool operator==(const Variant&, const Variant&) = default;
};

/// Parses a comma separated threshold list such as "100/2,100/3,25".
std::vector<Rational> parse_thresholds(std::string_view text);

}  // namespace gmkp
