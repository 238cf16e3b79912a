#include <map>

#include <gtest/gtest.h>

#include "sfcem/error.h"
#include "sfcem/routing.h"
#include "support/builders.h"

namespace sfcem {
namespace {

using testing::Lm;
using testing::Srv;

// Diamond 0 - {1, 2} - 3 with server 4 on switch 3.
SubstrateNetwork Diamond() {
  testing::NetBuilder b;
  for (int i = 0; i < 4; ++i) b.AddSwitch();
  b.AddServer();
  b.Connect(0, 1);
  b.Connect(0, 2);
  b.Connect(1, 3);
  b.Connect(2, 3);
  b.Connect(3, 4);
  return b.Build();
}

TEST(ShortestPath, LexicographicTieAndDegenerateCases) {
  const SubstrateNetwork net = Diamond();
  const auto hops = [](int) { return 1.0; };
  EXPECT_EQ(ShortestPath(net, 0, 3, hops), (std::vector<NodeId>{0, 1, 3}));
  EXPECT_EQ(ShortestPath(net, 2, 2, hops), (std::vector<NodeId>{2}));
  const auto blocked = [&](int l) {
    const Link& link = net.links()[l];
    return link.u == 3 || link.v == 3 ? std::numeric_limits<double>::infinity() : 1.0;
  };
  EXPECT_TRUE(ShortestPath(net, 0, 4, blocked).empty());
}

TEST(RouteChainLinks, LoadedBranchAvoided) {
  const SubstrateNetwork net = Diamond();
  // Request 0 loads 0-1-3; request 1 with the same endpoints must take
  // 0-2-3 because its summed (load + 1) weight is smaller.
  Scenario sc = testing::MakeScenario(
      net, {testing::MakeType(0)},
      {testing::MakeRequest(0, {0}, 0, 3, {10, 1}, {10, 10}),
       testing::MakeRequest(1, {0}, 0, 3, {10, 1}, {10, 10})},
      2, 1);
  const PlacementConfiguration c = testing::MakeConfig(sc, {Lm(3)}, 0);
  ASSERT_EQ(c.routes.paths[0].size(), 2u);
  EXPECT_EQ(c.routes.paths[0][0], (std::vector<NodeId>{0, 1, 3}));
  EXPECT_EQ(c.routes.paths[1][0], (std::vector<NodeId>{0, 2, 3}));
  // Host at the destination: the tail segment is empty and adds no load.
  EXPECT_EQ(c.routes.paths[0][1], (std::vector<NodeId>{}));
  EXPECT_DOUBLE_EQ(c.routes.link_load_mbps[*net.LinkBetween(3, 4)], 0);
  EXPECT_DOUBLE_EQ(c.routes.link_load_mbps[*net.LinkBetween(0, 1)], 10);
  EXPECT_DOUBLE_EQ(c.routes.link_load_mbps[*net.LinkBetween(0, 2)], 10);
}

TEST(RouteChainLinks, ServerDetourVisitsServer) {
  const SubstrateNetwork net = Diamond();
  Scenario sc = testing::MakeScenario(
      net, {testing::MakeType(0)}, {testing::MakeRequest(0, {0}, 0, 3, {10, 1}, {10, 10})},
      2, 1);
  const PlacementConfiguration c = testing::MakeConfig(sc, {Srv(4)}, 0);
  EXPECT_EQ(c.routes.paths[0][0], (std::vector<NodeId>{0, 1, 3, 4}));
  EXPECT_EQ(c.routes.paths[0][1], (std::vector<NodeId>{4, 3}));
  EXPECT_EQ(RequestLinks(c.routes, net, 0).size(), 4u);
}

TEST(CheckFlowConservation, ContiguousChainBalancedCorruptedNot) {
  const SubstrateNetwork net = Diamond();
  Scenario sc = testing::MakeScenario(
      net, {testing::MakeType(0), testing::MakeType(1)},
      {testing::MakeRequest(0, {0, 1}, 1, 2, {10, 1}, {10, 10})}, 2, 1);
  // Segments 1->..->4, 4->..->3, 3->..->2 share node 3.
  PlacementConfiguration c = testing::MakeConfig(sc, {Srv(4), Lm(3)}, 0);
  EXPECT_TRUE(CheckFlowConservation(c.routes, sc).feasible());

  std::map<NodeId, int> out;  // brute-force edge count
  for (const auto& seg : c.routes.paths[0]) {
    for (std::size_t i = 1; i < seg.size(); ++i) {
      ++out[seg[i - 1]];
      --out[seg[i]];
    }
  }
  for (const auto& [node, flow] : out) {
    EXPECT_EQ(flow, node == 1 ? 1 : node == 2 ? -1 : 0) << "node " << node;
  }

  c.routes.paths[0][0].push_back(0);  // dangling edge 4 -> 0 (no such link)
  const ConstraintReport r = CheckFlowConservation(c.routes, sc);
  EXPECT_GE(r.Count(ConstraintId::kFlowConservation), 2);
  bool names_zero = false;
  for (const Violation& v : r.violations) {
    names_zero = names_zero || v.subject.find("node 0") != std::string::npos;
  }
  EXPECT_TRUE(names_zero);
}

TEST(CheckLinkCapacity, OverloadBoundaryAndZeroTraffic) {
  testing::NetBuilder b;
  b.AddSwitch();
  b.AddSwitch();
  b.Connect(0, 1, 30);
  Scenario sc = testing::MakeScenario(
      b.Build(), {testing::MakeType(0)},
      {testing::MakeRequest(0, {0}, 0, 1, {20, 15, 0}, {10, 10, 10}),
       testing::MakeRequest(1, {0}, 0, 1, {20, 15, 0}, {10, 10, 10})},
      3, 1);
  for (int t = 0; t < 3; ++t) {
    const PlacementConfiguration c = testing::MakeConfig(sc, {Lm(0)}, t);
    const ConstraintReport r = CheckLinkCapacity(c.routes, sc.network, sc, t);
    if (t == 0) {
      ASSERT_EQ(r.Count(ConstraintId::kLinkCapacity), 1);
      EXPECT_DOUBLE_EQ(r.violations[0].overload, 10);
    } else {
      EXPECT_TRUE(r.feasible()) << "epoch " << t;
    }
  }
}

TEST(CheapestTransferPath, CostAndBottleneck) {
  testing::NetBuilder b;
  b.AddSwitch();
  b.AddServer();
  b.AddServer();
  b.AddSwitch();
  b.Connect(0, 1, 40000, 0.001);
  b.Connect(0, 2, 10000, 0.001);
  b.Connect(1, 3, 50000, 0.0005);
  b.Connect(3, 2, 50000, 0.0005);
  const TransferPath p = CheapestTransferPath(b.Build(), 1, 2);
  EXPECT_EQ(p.nodes, (std::vector<NodeId>{1, 3, 2}));
  EXPECT_DOUBLE_EQ(p.cost_per_mb, 0.001);
  EXPECT_DOUBLE_EQ(p.bottleneck_mbps, 50000);
}

}  // namespace
}  // namespace sfcem
