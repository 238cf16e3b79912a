#include <algorithm>

#include <gtest/gtest.h>

#include "sfcem/error.h"
#include "sfcem/placement.h"
#include "sfcem/workload.h"
#include "support/fixtures.h"

namespace sfcem {
namespace {

Scenario DefaultScenario(uint64_t seed) {
  const SubstrateNetwork net = BuildFatTree(10, 12, ParamRanges{}, 7);
  return GenerateScenario(net, GenParams{}, seed);
}

TEST(GenerateScenario, DefaultRegimes) {
  const Scenario sc = DefaultScenario(1);
  ASSERT_EQ(sc.request_count(), 90);
  EXPECT_EQ(sc.catalog.type_count(), 4);
  EXPECT_EQ(sc.catalog.instance_total(), 8);
  EXPECT_EQ(sc.epochs(), 6);
  for (const SfcRequest& q : sc.requests) {
    EXPECT_GE(q.vnfs.size(), 1u);
    EXPECT_LE(q.vnfs.size(), 4u);
    EXPECT_TRUE(sc.network.IsSwitch(q.source));
    EXPECT_TRUE(sc.network.IsSwitch(q.destination));
    for (int t = 0; t < sc.epochs(); ++t) {
      if (sc.schedule.IsWorking(t)) {
        EXPECT_GE(TrafficAt(q, t), 15);
        EXPECT_LE(TrafficAt(q, t), 35);
        EXPECT_GE(DeadlineAt(q, t), 8);
        EXPECT_LE(DeadlineAt(q, t), 12);
      } else {
        EXPECT_GE(TrafficAt(q, t), 0.2);
        EXPECT_LE(TrafficAt(q, t), 0.5);
        EXPECT_GE(DeadlineAt(q, t), 3);
        EXPECT_LE(DeadlineAt(q, t), 8);
      }
    }
  }
}

TEST(GenerateScenario, InitialPlacementFeasibleUnderBaseline) {
  const Scenario sc = DefaultScenario(2);
  const PlacementConfiguration& init = sc.initial_placement;
  EXPECT_EQ(init.epoch, -1);
  const std::vector<double> base = BaselineTraffic(sc);
  EXPECT_TRUE(CheckAll(init, sc, base).feasible());
  for (const auto& h : init.instance_host) {
    ASSERT_TRUE(h.has_value());
    EXPECT_EQ(h->kind, SlotKind::kServer);
  }
}

TEST(GenerateScenario, SingleInstanceGoesToCheapestServer) {
  ParamRanges r;
  r.vnf_types = 1;
  const SubstrateNetwork net = BuildFatTree(3, 5, r, 4);
  GenParams g;
  g.vnf_types = 1;
  g.instances_per_type = 1;
  g.request_count = 1;
  g.max_chain_length = 1;
  g.schedule = {1, 1};
  const Scenario sc = GenerateScenario(net, g, 5);
  const auto cheapest = std::min_element(
      net.servers().begin(), net.servers().end(),
      [](const Server& a, const Server& b) { return a.storage_cost_per_mb < b.storage_cost_per_mb; });
  ASSERT_TRUE(sc.initial_placement.instance_host[0].has_value());
  EXPECT_EQ(*sc.initial_placement.instance_host[0],
            (HostSlot{SlotKind::kServer, cheapest->id}));
}

TEST(GenerateScenario, DeterministicBySeed) {
  EXPECT_EQ(DefaultScenario(3), DefaultScenario(3));
  EXPECT_FALSE(DefaultScenario(3) == DefaultScenario(4));
}

TEST(TrafficAt, PureLookupAndBounds) {
  const Scenario sc = DefaultScenario(1);
  const SfcRequest& q = sc.requests[0];
  EXPECT_EQ(TrafficAt(q, 2), TrafficAt(q, 2));
  EXPECT_EQ(TrafficAt(q, 2), q.traffic_mbps[2]);
  EXPECT_THROW(TrafficAt(q, 6), LookupError);
  EXPECT_THROW(TrafficAt(q, -1), LookupError);
  EXPECT_THROW(DeadlineAt(q, 6), LookupError);
}

TEST(VnfCatalog, FlatNumberingIsTypeMajor) {
  std::vector<VnfType> types;
  for (int f = 0; f < 3; ++f) {
    VnfType t;
    t.id = f;
    t.switch_footprint_mb = t.server_footprint_mb = 10;
    t.switch_capacity_mbps = t.server_capacity_mbps = 10;
    t.programming_traffic_mb = 10;
    t.instance_count = f + 1;
    types.push_back(t);
  }
  const VnfCatalog c(types);
  EXPECT_EQ(c.instance_total(), 6);
  EXPECT_EQ(c.FlatIndex(0, 0), 0);
  EXPECT_EQ(c.FlatIndex(1, 1), 2);
  EXPECT_EQ(c.FlatIndex(2, 0), 3);
  EXPECT_EQ(c.InstancesOf(2), (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(c.type_of(4).id, 2);
  EXPECT_EQ(c.max_instances_per_type(), 3);
  types[1].id = 5;
  EXPECT_THROW(VnfCatalog{types}, ConfigError);
}

TEST(GenParams, RejectsInvalid) {
  GenParams g;
  g.schedule.working_epochs = 7;
  EXPECT_THROW(g.Validate(), ConfigError);
  g = GenParams{};
  g.request_count = 0;
  EXPECT_THROW(g.Validate(), ConfigError);
}

TEST(Fixtures, ScenariosShareNetworkAndCatalog) {
  const auto set = testing::MakeScenarios(testing::Shape{}, 3, 5);
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(set[0].network, set[2].network);
  EXPECT_EQ(set[0].catalog, set[2].catalog);
  EXPECT_FALSE(set[0].requests == set[1].requests);
}

}  // namespace
}  // namespace sfcem
