#include <gtest/gtest.h>

#include <algorithm>

#include "gmkp/errors.hpp"
#include "gmkp/model.hpp"
#include "support.hpp"

using namespace gmkp;

namespace {

bool has_kind(const std::vector<Violation>& v, ViolationKind kind, Index index = npos) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind && (index == npos || x.index == index); });
}

}  // namespace

TEST(Model, FromGroupsNumbersItemsGroupByGroup) {
  const Instance inst = Instance::from_groups({4, 4, 4}, {{11, {4, 4, 3}}, {12, {3, 3, 3, 3}}}, "lp");
  EXPECT_EQ(inst.num_items(), 7U);
  EXPECT_EQ(inst.groups[1], (std::vector<Index>{3, 4, 5, 6}));
  EXPECT_EQ(inst.group_weights(), (std::vector<std::int64_t>{11, 12}));
  EXPECT_EQ(inst.total_capacity(), 12);
  EXPECT_TRUE(inst.equal_capacities());
  EXPECT_EQ(inst.group_of()[4], 1U);
}

TEST(Model, ValidInstanceHasNoViolations) {
  const Instance inst = Instance::from_groups({5, 5}, {{3, {2, 3}}});
  EXPECT_TRUE(validate(inst).empty());
}

TEST(Model, GroupAboveTotalCapacityIsNamed) {
  const Instance inst = Instance::from_groups({10, 10}, {{1, {10, 10, 5}}, {1, {3}}});
  const auto v = validate(inst);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].kind, ViolationKind::GroupExceedsTotalCapacity);
  EXPECT_EQ(v[0].index, 0U);
}

TEST(Model, WeightAboveLargestCapacity) {
  const Instance inst = Instance::from_groups({5, 5}, {{1, {6}}, {1, {1}}});
  EXPECT_TRUE(has_kind(validate(inst), ViolationKind::WeightAboveMaxCapacity, 0));
}

TEST(Model, StructuralViolations) {
  Instance inst = Instance::from_groups({5, 5}, {{1, {2}}, {1, {2}}});
  inst.groups[1] = {0};
  const auto v = validate(inst);
  EXPECT_TRUE(has_kind(v, ViolationKind::ItemInSeveralGroups, 0));
  EXPECT_TRUE(has_kind(v, ViolationKind::ItemInNoGroup, 1));

  Instance one = Instance::from_groups({5}, {{1, {2}}});
  EXPECT_TRUE(has_kind(validate(one), ViolationKind::TooFewKnapsacks));

  Instance bad = Instance::from_groups({5, 5}, {{0, {2}}});
  bad.rewards.push_back(3);
  const auto vb = validate(bad);
  EXPECT_TRUE(has_kind(vb, ViolationKind::RewardCountMismatch));
  EXPECT_TRUE(has_kind(vb, ViolationKind::NonPositiveReward, 0));

  Instance empty = Instance::from_groups({5, 5}, {{1, {2}}});
  empty.groups.push_back({});
  empty.rewards.push_back(1);
  EXPECT_TRUE(has_kind(validate(empty), ViolationKind::EmptyGroup, 1));

  Instance small = Instance::from_groups({10, 2}, {{1, {3}}});
  EXPECT_TRUE(has_kind(validate(small), ViolationKind::SmallestKnapsackFitsNothing, 1));
}

TEST(Model, PlainMkpFlag) {
  EXPECT_TRUE(is_plain_mkp(Instance::from_groups({5, 5}, {{1, {2}}, {1, {3}}})));
  EXPECT_FALSE(is_plain_mkp(Instance::from_groups({5, 5}, {{1, {2, 2}}})));
}

TEST(Normalize, DropsKnapsackNothingFits) {
  const Instance inst = Instance::from_groups({10, 2, 10}, {{5, {3, 4}}, {2, {5}}});
  const Normalized n = normalize(inst);
  EXPECT_EQ(n.report.removed_knapsacks, (std::vector<Index>{1}));
  EXPECT_EQ(n.instance.capacities, (std::vector<std::int64_t>{10, 10}));
  EXPECT_EQ(n.report.kept_knapsacks, (std::vector<Index>{0, 2}));
}

TEST(Normalize, DropsGroupHeavierThanTotal) {
  const Instance inst = Instance::from_groups({10, 10}, {{5, {9, 9, 7}}, {2, {5}}});
  const Normalized n = normalize(inst);
  EXPECT_EQ(n.report.removed_groups, (std::vector<Index>{0}));
  EXPECT_EQ(n.instance.num_groups(), 1U);
  EXPECT_EQ(n.report.kept_items, (std::vector<Index>{3}));
  EXPECT_TRUE(validate(n.instance).empty());
}

TEST(Normalize, IteratesToFixedPoint) {
  // Dropping the weight-1 group raises the minimum weight to 4, which
  // removes the capacity-3 knapsack; then the weight-10 group no longer fits.
  const Instance inst = Instance::from_groups({5, 3, 4}, {{1, {1, 20}}, {4, {5, 5}}, {2, {4}}});
  const Normalized n = normalize(inst);
  EXPECT_EQ(n.report.removed_knapsacks, (std::vector<Index>{1}));
  EXPECT_EQ(n.report.removed_groups, (std::vector<Index>{0, 1}));
  EXPECT_EQ(n.instance.capacities, (std::vector<std::int64_t>{5, 4}));
  const Normalized again = normalize(n.instance);
  EXPECT_FALSE(again.report.changed());
  EXPECT_EQ(again.instance, n.instance);
}

TEST(Normalize, UnchangedInstanceIsIdentity) {
  const Instance inst = Instance::from_groups({4, 4, 4}, {{11, {4, 4, 3}}, {12, {3, 3, 3, 3}}}, "lp");
  const Normalized n = normalize(inst);
  EXPECT_FALSE(n.report.changed());
  EXPECT_EQ(n.instance, inst);
}

TEST(Normalize, Errors) {
  EXPECT_THROW(normalize(Instance::from_groups({10, 2}, {{1, {3}}})), InputError);
  EXPECT_THROW(normalize(Instance::from_groups({10, 0}, {{1, {3}}})), InputError);
  EXPECT_THROW(normalize(Instance::from_groups({10, 10}, {{1, {0}}})), InputError);
}

TEST(Normalize, IdempotentOnRandomInstances) {
  for (const Instance& inst : testsupport::small_suite(40, 5)) {
    Instance messy = inst;
    messy.capacities.push_back(1);
    const Normalized once = normalize(messy);
    const Normalized twice = normalize(once.instance);
    EXPECT_EQ(once.instance, twice.instance);
    EXPECT_FALSE(twice.report.changed());
  }
}

TEST(Assignment, MutatorsKeepLoads) {
  const Instance inst = Instance::from_groups({10, 10}, {{1, {7, 7, 2, 2}}});
  Assignment a(inst);
  a.place(0, 0);
  a.place(1, 0);
  a.place(2, 1);
  a.place(3, 1);
  EXPECT_EQ(a.loads(), (std::vector<std::int64_t>{14, 4}));
  a.move(1, 1);
  EXPECT_EQ(a.loads(), (std::vector<std::int64_t>{7, 11}));
  a.swap(0, 2);
  EXPECT_EQ(a.loads(), (std::vector<std::int64_t>{2, 16}));
  a.unplace(1);
  EXPECT_EQ(a.loads(), (std::vector<std::int64_t>{2, 9}));
  EXPECT_TRUE(a.loads_consistent());
  EXPECT_EQ(a.max_exceeded(inst.capacities), -1);
}

TEST(Metrics, EmptySelection) {
  const Instance inst = Instance::from_groups({4, 4}, {{3, {2}}});
  const BiCriteriaMetrics m = metrics(inst, Selection(1), Assignment(inst));
  EXPECT_EQ(m.reward, 0);
  EXPECT_EQ(m.max_exceeded, -4);
  EXPECT_FALSE(m.alpha_ratio.has_value());
  EXPECT_EQ(m.beta_ratio, Rational(-1));
}

TEST(Metrics, OverloadedKnapsack) {
  const Instance inst = Instance::from_groups({5, 9}, {{4, {7}}});
  Assignment a(inst);
  a.place(0, 0);
  const BiCriteriaMetrics m = metrics(inst, Selection(std::vector<bool>{true}), a, 4);
  EXPECT_EQ(m.max_exceeded, 2);
  EXPECT_EQ(*m.alpha_ratio, Rational(1));
  EXPECT_EQ(*m.beta_ratio, Rational(2, 9));
}

TEST(Metrics, KpTightFixtureLoads) {
  const Instance inst = Instance::from_groups({4, 4, 4}, {{12, {3, 3, 3, 3}}});
  Assignment a(inst);
  a.place(0, 0);
  a.place(1, 1);
  a.place(2, 2);
  a.place(3, 0);
  const BiCriteriaMetrics m = metrics(inst, Selection(std::vector<bool>{true}), a, 12);
  EXPECT_EQ(m.reward, 12);
  EXPECT_EQ(*m.beta_ratio, Rational(1) - Rational(2, 4));
}

TEST(Metrics, InconsistencyThrows) {
  const Instance inst = Instance::from_groups({5, 5}, {{4, {3, 2}}, {1, {1}}});
  Assignment partial(inst);
  partial.place(0, 0);
  EXPECT_THROW(metrics(inst, Selection(std::vector<bool>{true, false}), partial), InvariantViolation);
  Assignment extra(inst);
  extra.place(2, 1);
  EXPECT_FALSE(consistency_error(inst, Selection(2), extra).empty());
  EXPECT_THROW(metrics(inst, Selection(2), extra), InvariantViolation);
}

TEST(Selection, Helpers) {
  const Instance inst = Instance::from_groups({5, 5}, {{4, {3, 2}}, {1, {1}}, {6, {4}}});
  const Selection s(std::vector<bool>{true, false, true});
  EXPECT_EQ(s.count(), 2U);
  EXPECT_EQ(s.indices(), (std::vector<Index>{0, 2}));
  EXPECT_EQ(s.reward(inst), 10);
  EXPECT_EQ(s.weight(inst), 9);
}
