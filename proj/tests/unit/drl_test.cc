#include <cmath>

#include <gtest/gtest.h>

#include "sfcem/drl.h"
#include "sfcem/error.h"
#include "sfcem/placement.h"
#include "support/builders.h"
#include "support/fixtures.h"

namespace sfcem {
namespace {

using testing::Em;
using testing::Lm;
using testing::Srv;

// Switch 0 - switch 1 - server 2; node 0 has a single 40 Gbps link.
Scenario Small(std::vector<VnfType> types, std::vector<SfcRequest> requests,
               double em_capacity = 500) {
  testing::NetBuilder b(static_cast<int>(types.size()));
  b.AddSwitch().em_capacity_mb = em_capacity;
  b.AddSwitch().em_capacity_mb = em_capacity;
  b.AddServer();
  b.Connect(0, 1, 40000);
  b.Connect(1, 2, 40000);
  Scenario sc = testing::MakeScenario(b.Build(), std::move(types), std::move(requests), 3, 1);
  return sc;
}

TEST(ExtractState, EmptyPlacementFullResiduals) {
  const Scenario sc = Small({testing::MakeType(0)}, {});
  PlacementConfiguration empty;
  empty.instance_host.assign(1, std::nullopt);
  const StateFeatures s = ExtractState(empty, sc, 0);
  EXPECT_EQ(s.size(), StateSize(sc.network, sc.catalog, sc.epochs()));
  for (int i = s.server_storage_offset; i < s.instance_capacity_offset; ++i) {
    EXPECT_EQ(s.values[i], 1.0) << i;
  }
}

TEST(ExtractState, FullLoadBandwidthAndEpoch) {
  Scenario sc = Small({testing::MakeType(0)},
                      {testing::MakeRequest(0, {0}, 0, 1, {30, 10000, 1}, {10, 10, 10})});
  const PlacementConfiguration loaded = testing::MakeConfig(sc, {Srv(2)}, 0);
  const StateFeatures s0 = ExtractState(loaded, sc, 0);
  EXPECT_EQ(s0.values[s0.instance_capacity_offset], 0.0);
  EXPECT_EQ(s0.values[s0.epoch_offset + 0], 1.0);
  EXPECT_EQ(s0.values[s0.epoch_offset + 1], 0.0);

  const PlacementConfiguration heavy = testing::MakeConfig(sc, {Lm(1)}, 1);
  const StateFeatures s1 = ExtractState(heavy, sc, 1);
  EXPECT_DOUBLE_EQ(s1.values[s1.bandwidth_offset + 0], 30.0 / 40.0);
  EXPECT_EQ(s1.values[s1.epoch_offset + 1], 1.0);
  const SlotSpace slots(sc.network);
  EXPECT_EQ(s1.values[s1.placement_offset + slots.IndexOf(Lm(1))], 1.0);
  EXPECT_THROW(ExtractState(heavy, sc, 3), LookupError);
}

TEST(StaticFilter, StrictFitPerSlot) {
  // footprint 50: LM (35) pruned, EM (100) kept, server kept.
  const Scenario sc = Small({testing::MakeType(0, 50)}, {}, 100);
  const SlotSpace slots(sc.network);
  const StaticFilter f = BuildStaticFilter(sc.catalog, sc.network);
  EXPECT_EQ(f.retained[0], (std::vector<int>{slots.IndexOf(Srv(2)), slots.IndexOf(Em(0)),
                                             slots.IndexOf(Em(1))}));
  // footprint equal to EM capacity: pruned as well.
  const Scenario exact = Small({testing::MakeType(0, 100)}, {}, 100);
  EXPECT_EQ(BuildStaticFilter(exact.catalog, exact.network).retained[0].size(), 1u);
  const Scenario tiny = Small({testing::MakeType(0, 1)}, {});
  EXPECT_EQ(BuildStaticFilter(tiny.catalog, tiny.network).retained[0].size(), 5u);
  EXPECT_EQ(BuildStaticFilter(tiny.catalog, tiny.network, true).retained[0].size(), 1u);
  const Scenario huge = Small({testing::MakeType(0, 20000)}, {});
  EXPECT_THROW(BuildStaticFilter(huge.catalog, huge.network), FilterError);
}

TEST(DynamicFilter, ResidualStrictlyAboveFootprint) {
  // Instances 0 and 1 sit in EM of switch 0; instance 2 is on the server.
  Scenario sc = Small({testing::MakeType(0, 50, 3)}, {}, 160);
  const PlacementConfiguration prev = testing::MakeConfig(sc, {Em(0), Em(0), Srv(2)}, -1);
  const SlotSpace slots(sc.network);
  const Occupancy occ = ComputeOccupancy(prev.instance_host, sc.network, sc.catalog);
  const std::vector<int> outputs{slots.IndexOf(Em(0)), slots.IndexOf(Em(1)),
                                 slots.IndexOf(Srv(2))};
  // EM 0 has 60 MB left (> 50): active for instance 2; EM 1 is empty.
  EXPECT_EQ(BuildDynamicFilter(occ, prev, sc, 2, outputs, slots),
            (std::vector<bool>{true, true, true}));
  Scenario exact = Small({testing::MakeType(0, 50, 3)}, {}, 150);
  const Occupancy occ2 = ComputeOccupancy(prev.instance_host, exact.network, exact.catalog);
  EXPECT_EQ(BuildDynamicFilter(occ2, prev, exact, 2, outputs, slots),
            (std::vector<bool>{false, true, true}));
}

TEST(DynamicFilter, StayPutWhenEverythingElseFull) {
  const Scenario sc = Small({testing::MakeType(0, 50, 1)}, {}, 40);
  const PlacementConfiguration prev = testing::MakeConfig(sc, {Srv(2)}, -1);
  const SlotSpace slots(sc.network);
  const Occupancy occ = ComputeOccupancy(prev.instance_host, sc.network, sc.catalog);
  const std::vector<int> all = FullOutputs(sc.catalog, sc.network).retained[0];
  const std::vector<bool> mask = BuildDynamicFilter(occ, prev, sc, 0, all, slots);
  for (std::size_t j = 0; j < all.size(); ++j) {
    EXPECT_EQ(mask[j], slots.slot(all[j]) == Srv(2)) << j;
  }
}

struct Bench {
  Scenario sc;
  PolicyBank bank;
  StateFeatures state;
};

Bench OneInstance(FilterMode mode, double init_scale = 0.01) {
  Bench b{Small({testing::MakeType(0, 20, 1)},
                {testing::MakeRequest(0, {0}, 0, 1, {20, 1, 1}, {10, 10, 10})}),
          {},
          {}};
  b.sc.initial_placement = testing::MakeConfig(b.sc, {Srv(2)}, -1);
  b.bank = MakePolicyBank(b.sc.network, b.sc.catalog, b.sc.epochs(), mode, false, init_scale, 1);
  b.state = ExtractState(Observe(b.sc.initial_placement, b.sc, 0), b.sc, 0);
  return b;
}

TEST(SelectAction, FullExplorationIsUniform) {
  Bench b = OneInstance(FilterMode::kHybrid);
  const int n = static_cast<int>(b.bank.heads[0].outputs().size());
  ASSERT_EQ(n, 5);
  std::vector<int> counts(n, 0);
  Rng rng(11);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    ++counts[SelectAction(b.bank, b.state, b.sc.initial_placement, b.sc, 1.0, rng).chosen[0]];
  }
  double chi2 = 0;
  for (int c : counts) chi2 += std::pow(c - draws / double(n), 2) / (draws / double(n));
  EXPECT_LT(chi2, 18.47);  // df = 4, p = 0.001
}

TEST(SelectAction, GreedyFollowsDominantWeight) {
  Bench b = OneInstance(FilterMode::kNone, 0.0);
  b.bank.heads[0].mutable_bias()[3] = 5.0;
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(SelectAction(b.bank, b.state, b.sc.initial_placement, b.sc, 0.0, rng).chosen[0], 3);
  }
  // Ties: the smallest output index.
  b.bank.heads[0].mutable_bias()[3] = 0.0;
  EXPECT_EQ(SelectAction(b.bank, b.state, b.sc.initial_placement, b.sc, 0.0, rng).chosen[0], 0);
}

TEST(SelectAction, MaskedSlotNeverChosen) {
  // Two 20 MB instances on the server; LM of switch 0 holds 35 MB, so once
  // one instance moves there the other must not follow.
  Scenario sc = Small({testing::MakeType(0, 20, 2)}, {});
  sc.initial_placement = testing::MakeConfig(sc, {Srv(2), Srv(2)}, -1);
  PolicyBank bank = MakePolicyBank(sc.network, sc.catalog, sc.epochs(), FilterMode::kHybrid,
                                   false, 0.0, 1);
  const SlotSpace slots(sc.network);
  for (auto& head : bank.heads) head.mutable_bias()[slots.IndexOf(Lm(0))] = 9.0;
  const StateFeatures state = ExtractState(Observe(sc.initial_placement, sc, 0), sc, 0);
  Rng rng(2);
  for (double eps : {0.0, 0.5, 1.0}) {
    for (int i = 0; i < 200; ++i) {
      const Selection s = SelectAction(bank, state, sc.initial_placement, sc, eps, rng);
      for (int k = 0; k < 2; ++k) EXPECT_TRUE(s.masks[k][s.chosen[k]]);
      const PlacementConfiguration next = ApplyAction(sc.initial_placement, s.action, sc, 0);
      EXPECT_TRUE(CheckStorage(next, sc.network, sc.catalog).feasible());
    }
  }
}

TEST(Reward, ZeroOnStorageOverload) {
  Scenario sc = Small({testing::MakeType(0, 30, 2)},
                      {testing::MakeRequest(0, {0}, 0, 1, {1, 1, 1}, {10, 10, 10})});
  const PlacementConfiguration prev = testing::MakeConfig(sc, {Srv(2), Srv(2)}, -1);
  const PlacementConfiguration ok = testing::MakeConfig(sc, {Lm(0), Srv(2)}, 0);
  const PlacementConfiguration over = testing::MakeConfig(sc, {Lm(0), Lm(0)}, 0);
  EXPECT_GT(ComputeReward(ok, prev, sc, 0, {}, {}), 0);
  EXPECT_EQ(ComputeReward(over, prev, sc, 0, {}, {}), 0.0);
}

TEST(Reward, WeightedAcceptanceAndCost) {
  StepEvaluation ev;
  ev.acceptance_ratio = 1.0;
  ev.cost.weighted_total = 2.0;
  EXPECT_DOUBLE_EQ(RewardFromEvaluation(ev, RewardKind::kAcceptanceCost, {0.8, 0.2}), 0.9);
  ev.acceptance_ratio = 0.0;
  ev.cost.weighted_total = 1e12;
  const double r = RewardFromEvaluation(ev, RewardKind::kAcceptanceCost, {0.8, 0.2});
  EXPECT_GT(r, 0);
  EXPECT_LT(r, 1e-12);
  ev.cost.weighted_total = 0;
  EXPECT_DOUBLE_EQ(RewardFromEvaluation(ev, RewardKind::kAcceptanceCost, {0.8, 0.2}),
                   0.2 / kCostFloor);
  ev.report.violations.push_back({ConstraintId::kServerProcessing, "x", 1});
  EXPECT_EQ(RewardFromEvaluation(ev, RewardKind::kAcceptanceCost, {0.8, 0.2}), 0.0);
}

TEST(Reward, ServerOnlyNegativeDelayPlusMigration) {
  StepEvaluation ev;
  ev.cost.migration_cost = 2;
  DelayBreakdown a, b;
  a.total_ms = 3;
  b.total_ms = 4;
  ev.delays = {a, b};
  EXPECT_DOUBLE_EQ(RewardFromEvaluation(ev, RewardKind::kNegativeDelayMigration, {}), -9);
}

TEST(TargetTransform, StatelessForms) {
  EXPECT_DOUBLE_EQ(TransformReward(3, TargetTransform::kSquash), 0.75);
  EXPECT_DOUBLE_EQ(TransformReward(-3, TargetTransform::kSquash), 0.25);
  EXPECT_DOUBLE_EQ(TransformReward(7, TargetTransform::kRaw), 7);
  EXPECT_THROW(TransformReward(1, TargetTransform::kEpochRange), ConfigError);
  EXPECT_EQ(ParseTargetTransform("epoch_range"), TargetTransform::kEpochRange);
  EXPECT_EQ(ToString(TargetTransform::kSquash), "squash");
  EXPECT_THROW(ParseTargetTransform("log"), ConfigError);
}

TEST(TargetTransform, EpochRangeScalesPerEpoch) {
  RewardScaler s(TargetTransform::kEpochRange);
  EXPECT_EQ(s.Scale(0, 5), 0.5);  // empty range
  EXPECT_EQ(s.Scale(0, 0), 0.0);
  EXPECT_EQ(s.Scale(0, 5), 1.0);
  EXPECT_NEAR(s.Scale(0, std::exp(std::log1p(5.0) / 2) - 1), 0.5, 1e-12);
  EXPECT_EQ(s.Scale(1, 100), 0.5);  // independent range per epoch
  RewardScaler plain(TargetTransform::kSquash);
  EXPECT_DOUBLE_EQ(plain.Scale(4, 1), 0.5);
}

TEST(EpsilonSchedule, Endpoints) {
  EpsilonSchedule lin{1.0, 0.02, EpsilonSchedule::Shape::kLinear};
  EXPECT_DOUBLE_EQ(lin.At(0, 101), 1.0);
  EXPECT_NEAR(lin.At(100, 101), 0.02, 1e-12);
  EXPECT_NEAR(lin.At(50, 101), 0.51, 1e-12);
  EpsilonSchedule ex{1.0, 0.01, EpsilonSchedule::Shape::kExponential};
  EXPECT_NEAR(ex.At(50, 101), 0.1, 1e-12);
  EXPECT_NEAR(ex.At(100, 101), 0.01, 1e-12);
}

TEST(TrainingConfig, Validation) {
  TrainingConfig c;
  c.episodes = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = TrainingConfig{};
  c.epsilon.start = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = TrainingConfig{};
  c.learning_rate = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(Train, DeterministicAndHybridStorageSafe) {
  const auto set = testing::MakeScenarios(testing::Shape{4, 4, 2, 2, 6, 4, 2}, 3, 9);
  TrainingConfig c;
  c.episodes = 150;
  c.seed = 4;
  const TrainingResult a = Train(set, c);
  const TrainingResult b = Train(set, c);
  ASSERT_EQ(a.trace.size(), 150u);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].mean_reward, b.trace[i].mean_reward);
    EXPECT_EQ(a.trace[i].epsilon, b.trace[i].epsilon);
  }
  EXPECT_EQ(a.policies, b.policies);
  EXPECT_EQ(a.storage_violation_steps, 0);
  EXPECT_EQ(a.steps, 150 * 4);
}

TEST(Train, ZeroEpisodesKeepsInitialWeights) {
  const auto set = testing::MakeScenarios(testing::Shape{4, 4, 2, 2, 6, 4, 2}, 1, 9);
  TrainingConfig c;
  c.episodes = 0;
  const TrainingResult r = Train(set, c);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.policies, MakePolicyBank(set[0].network, set[0].catalog, set[0].epochs(),
                                       c.filter_mode, false, c.init_scale,
                                       DeriveSeed(c.seed, 0)));
}

TEST(Train, SingleFeasibleActionGivesConstantTrace) {
  // Switch memories too small for the VNF: the server is the only output.
  testing::NetBuilder nb;
  nb.AddSwitch().lm_capacity_mb = 1;
  nb.AddSwitch().lm_capacity_mb = 1;
  nb.AddServer();
  nb.Connect(0, 1);
  nb.Connect(1, 2);
  Scenario sc = testing::MakeScenario(
      nb.Build(), {testing::MakeType(0, 600)},
      {testing::MakeRequest(0, {0}, 0, 1, {20, 1, 1}, {10, 10, 10})}, 3, 1);
  sc.initial_placement = testing::MakeConfig(sc, {Srv(2)}, -1);
  TrainingConfig c;
  c.episodes = 30;
  const std::vector<Scenario> set{sc};
  const TrainingResult r = Train(set, c);
  for (const TraceRow& row : r.trace) EXPECT_EQ(row.mean_reward, r.trace[0].mean_reward);
}

TEST(Train, RejectsMixedTrainSets) {
  auto a = testing::MakeScenarios(testing::Shape{4, 4, 2, 2, 6, 4, 2}, 1, 1);
  const auto b = testing::MakeScenarios(testing::Shape{4, 4, 2, 2, 6, 4, 2}, 1, 2);
  a.push_back(b[0]);
  EXPECT_THROW(Train(a, TrainingConfig{}), ConfigError);
  EXPECT_THROW(Train(std::vector<Scenario>{}, TrainingConfig{}), ConfigError);
}

}  // namespace
}  // namespace sfcem
