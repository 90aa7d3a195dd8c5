#include <gtest/gtest.h>

#include <random>

#include "gmkp/errors.hpp"
#include "gmkp/oracle.hpp"
#include "gmkp/pipeline.hpp"
#include "support.hpp"

using namespace gmkp;

namespace {

Instance lp_fixture() { return Instance::from_groups({4, 4, 4}, {{11, {4, 4, 3}}, {12, {3, 3, 3, 3}}}); }

}  // namespace

TEST(RunAlgorithm, LpTightFixture) {
  const Instance inst = lp_fixture();
  const SolveResult r = run_algorithm(inst, Variant::lp());
  EXPECT_EQ(r.selection.chosen, (std::vector<bool>{true, true}));
  EXPECT_EQ(r.metrics.max_exceeded, 5);
  EXPECT_EQ(r.metrics.beta_ratio, Rational(5, 4));
  EXPECT_EQ(r.metrics.reward, 23);
  EXPECT_TRUE(check_guarantees(r, inst).ok());
}

TEST(RunAlgorithm, KpTightFixture) {
  const Instance inst = Instance::from_groups({4, 4, 4}, {{12, {3, 3, 3, 3}}});
  const SolveResult r = run_algorithm(inst, Variant::kp());
  EXPECT_EQ(r.metrics.max_exceeded, 2);
  EXPECT_EQ(r.metrics.beta_ratio, Rational(1, 2));
  EXPECT_TRUE(check_guarantees(r, inst).ok());
}

TEST(RunAlgorithm, TwoMkpTightFixture) {
  const Instance inst = Instance::from_groups({7, 7, 7}, {{21, {3, 3, 3, 3, 3, 3, 3}}});
  const SolveResult r = run_algorithm(inst, Variant::two_mkp());
  EXPECT_EQ(r.assignment.loads(), (std::vector<std::int64_t>{9, 6, 6}));
  EXPECT_EQ(r.metrics.beta_ratio, Rational(2, 7));
  EXPECT_TRUE(check_guarantees(r, inst).ok());
  // Swap-opt cannot fix it: every item weighs 3.
  EXPECT_EQ(run_algorithm(inst, Variant::two_mkp(), {.swap_opt = true}).metrics.max_exceeded, 2);
}

TEST(RunAlgorithm, ThreeMkpTightFixture) {
  const Instance inst = Instance::from_groups({9, 9, 9}, {{8, {8}}, {8, {8}}, {8, {8}}, {3, {3}}});
  const SolveResult r = run_algorithm(inst, Variant::three_mkp());
  EXPECT_EQ(r.assignment.loads(), (std::vector<std::int64_t>{11, 8, 8}));
  EXPECT_EQ(r.metrics.beta_ratio, Rational(2, 9));
  const GuaranteeReport rep = check_guarantees(r, inst);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.beta, Rational(1, 3));
}

TEST(RunAlgorithm, TotalCapacityOverride) {
  const Instance inst = lp_fixture();
  const SolveResult r = run_algorithm(inst, Variant::kp(), {.total_capacity = 11});
  EXPECT_EQ(r.total_capacity, 11);
  EXPECT_EQ(r.selection.chosen, (std::vector<bool>{true, false}));
  EXPECT_FALSE(check_guarantees(r, inst).applicable);
}

TEST(RunAlgorithm, HeavyItemsTwoMkpOptimal) {
  const Instance inst = Instance::from_groups({10, 10}, {{5, {6}}, {9, {7, 8}}, {4, {9}}});
  const SolveResult r = run_algorithm(inst, Variant::two_mkp());
  EXPECT_LE(r.metrics.max_exceeded, 0);
  EXPECT_EQ(r.metrics.reward, exact_gmkp(inst).optimum);
}

TEST(RunAlgorithm, PowersOfTwoKpOptimal) {
  const Instance inst = Instance::from_groups({8, 8}, {{9, {4, 4, 2}}, {7, {8}}, {3, {1, 2}}, {5, {4, 1}}});
  const SolveResult r = run_algorithm(inst, Variant::kp());
  EXPECT_LE(r.metrics.max_exceeded, 0);
  EXPECT_EQ(r.metrics.reward, exact_gmkp(inst).optimum);
}

TEST(RunAlgorithm, MkpPrimeMixedPowers) {
  const Instance inst = Instance::from_groups({8, 4, 2}, {{10, {8}}, {6, {4, 2}}, {5, {2, 2}}, {3, {1}}});
  const SolveResult r = run_algorithm(inst, Variant::mkp_prime());
  const GuaranteeReport rep = check_guarantees(r, inst, exact_gmkp(inst).optimum);
  EXPECT_EQ(rep.beta, Rational(0));
  EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
}

TEST(RunBest, PicksSmallestOverload) {
  const Instance inst = lp_fixture();
  const SolveResult r = run_best(inst, default_best_variants(inst));
  EXPECT_EQ(r.algorithm.rfind("best:", 0), 0U);
  for (const Variant& v : default_best_variants(inst)) {
    const SolveResult single = run_algorithm(inst, v);
    EXPECT_LE(r.metrics.max_exceeded, single.metrics.max_exceeded) << v.name();
  }
  EXPECT_THROW(run_best(inst, {}), InputError);
}

TEST(CommonPowerBase, Examples) {
  const std::vector<std::int64_t> twos{1, 2, 8, 4, 16};
  EXPECT_EQ(common_power_base(twos), 2);
  const std::vector<std::int64_t> nines{9, 81, 3};
  EXPECT_EQ(common_power_base(nines), 3);
  const std::vector<std::int64_t> mixed{2, 3};
  EXPECT_FALSE(common_power_base(mixed).has_value());
  const std::vector<std::int64_t> one{8};
  const auto base = common_power_base(one);
  ASSERT_TRUE(base.has_value());
  EXPECT_GE(*base, 2);
  const std::vector<std::int64_t> fours{4, 16, 64};
  const auto b4 = common_power_base(fours);
  ASSERT_TRUE(b4.has_value());
  EXPECT_TRUE(*b4 == 2 || *b4 == 4);
}

TEST(Guarantees, HoldOnRandomSmallInstances) {
  for (const Instance& inst : testsupport::small_suite(40, 31)) {
    const std::int64_t opt = testsupport::brute_gmkp(inst);
    for (const Variant& v : {Variant::lp(), Variant::kp(), Variant::two_mkp(), Variant::three_mkp(),
                             Variant::mkp_prime(), Variant::mkp_d_fractions(inst.max_capacity(), 10)}) {
      for (const bool swap : {false, true}) {
        const SolveResult r = run_algorithm(inst, v, {.swap_opt = swap});
        const GuaranteeReport rep = check_guarantees(r, inst, opt);
        EXPECT_TRUE(rep.ok()) << inst.id << " " << v.name() << ": " << (rep.ok() ? "" : rep.violations.front());
        EXPECT_EQ(consistency_error(inst, r.selection, r.assignment), "");
      }
    }
  }
}
