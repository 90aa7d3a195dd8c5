#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gmkp/errors.hpp"
#include "gmkp/oracle.hpp"
#include "support.hpp"

using namespace gmkp;

TEST(FeasiblePacking, Examples) {
  const Instance seven = Instance::from_groups({7, 7, 7}, {{21, {3, 3, 3, 3, 3, 3, 3}}});
  EXPECT_FALSE(feasible_packing(seven, Selection(std::vector<bool>{true})).has_value());
  const auto empty = feasible_packing(seven, Selection(1));
  ASSERT_TRUE(empty.has_value());
  EXPECT_EQ(empty->loads(), (std::vector<std::int64_t>{0, 0, 0}));

  const Instance two = Instance::from_groups({10, 10}, {{12, {6, 6}}, {9, {9}}});
  const Selection both(std::vector<bool>{true, true});
  EXPECT_FALSE(feasible_packing(two, both).has_value());
  const Instance roomy = Instance::from_groups({10, 12}, {{12, {6, 6}}, {9, {5}}});
  const auto packed = feasible_packing(roomy, both);
  ASSERT_TRUE(packed.has_value());
  EXPECT_LE(packed->max_exceeded(roomy.capacities), 0);
  EXPECT_EQ(consistency_error(roomy, both, *packed), "");
}

TEST(FeasiblePacking, MatchesReferenceSearch) {
  for (const Instance& inst : testsupport::small_suite(40, 61)) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inst.num_groups()); mask += 3) {
      std::vector<bool> chosen(inst.num_groups());
      for (Index l = 0; l < chosen.size(); ++l) chosen[l] = (mask >> l) & 1U;
      const auto got = feasible_packing(inst, Selection(chosen));
      EXPECT_EQ(got.has_value(), testsupport::packs(inst.capacities, testsupport::chosen_weights(inst, chosen)));
      if (got) EXPECT_LE(got->max_exceeded(inst.capacities), 0);
    }
  }
}

TEST(ExactGmkp, Examples) {
  const Instance two = Instance::from_groups({10, 10}, {{12, {6, 6}}, {9, {9}}, {1, {4}}});
  EXPECT_EQ(exact_gmkp(two).optimum, 13);
  const Instance v21 = Instance::from_groups({10, 10}, {{12, {6, 4}}, {9, {9}}});
  const ExactGmkp r = exact_gmkp(v21);
  EXPECT_EQ(r.optimum, 21);
  EXPECT_LE(r.witness.metrics.max_exceeded, 0);
  EXPECT_EQ(r.witness.metrics.reward, 21);
  const Instance lp = Instance::from_groups({4, 4, 4}, {{11, {4, 4, 3}}, {12, {3, 3, 3, 3}}});
  EXPECT_EQ(exact_gmkp(lp).optimum, 11);
}

TEST(ExactGmkp, MatchesBruteForce) {
  for (const Instance& inst : testsupport::small_suite(60, 67)) {
    const ExactGmkp r = exact_gmkp(inst);
    EXPECT_EQ(r.optimum, testsupport::brute_gmkp(inst)) << inst.id;
    EXPECT_LE(r.witness.metrics.max_exceeded, 0);
    EXPECT_EQ(r.witness.metrics.reward, r.optimum);
  }
}

TEST(ExactGmkp, Budget) {
  const Instance inst = testsupport::small_suite(1, 71).front();
  EXPECT_THROW(exact_gmkp(inst, {1}), BudgetExceeded);
}

TEST(EnumerateFeasibleZ, Examples) {
  SelectionProblem one{{1}, {{{18}, 20, {}}}};
  const auto all = enumerate_feasible_z(one);
  ASSERT_EQ(all.size(), 2U);
  EXPECT_EQ(all[0], Selection(1));
  EXPECT_EQ(all[1], Selection(std::vector<bool>{true}));

  SelectionProblem cut{{1}, {{{18}, 20, {}}, {{3}, 2, {}}}};
  const auto none = enumerate_feasible_z(cut);
  ASSERT_EQ(none.size(), 1U);
  EXPECT_EQ(none[0], Selection(1));

  SelectionProblem big{std::vector<std::int64_t>(21, 1), {{std::vector<std::int64_t>(21, 1), 3, {}}}};
  EXPECT_THROW(enumerate_feasible_z(big), InputError);
}

TEST(EnumerateFeasibleZ, MatchesBruteForceAndRowOrder) {
  std::mt19937_64 rng(73);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  for (int t = 0; t < 60; ++t) {
    SelectionProblem p;
    const Index k = static_cast<Index>(pick(1, 10));
    p.group_rewards.assign(k, 1);
    for (int r = 0; r < pick(1, 4); ++r) {
      ProblemRow row;
      for (Index l = 0; l < k; ++l) row.coeffs.push_back(pick(0, 9));
      row.rhs = pick(0, 30);
      p.rows.push_back(row);
    }
    const auto z = enumerate_feasible_z(p);
    std::vector<std::uint64_t> masks;
    for (const auto& s : z) masks.push_back(testsupport::to_mask(s));
    EXPECT_EQ(masks, testsupport::brute_feasible_masks(p));
    std::reverse(p.rows.begin(), p.rows.end());
    EXPECT_EQ(enumerate_feasible_z(p), z);
  }
}
