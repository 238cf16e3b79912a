#ifndef SFCEM_ROUTING_H_
#define SFCEM_ROUTING_H_

#include <functional>
#include <span>
#include <vector>

#include "sfcem/configuration.h"
#include "sfcem/placement.h"
#include "sfcem/workload.h"

namespace sfcem {

// Minimum-weight path from src to dst (inclusive), ties broken by the
// lexicographically smallest node sequence. `weight(link_index)` must be
// non-negative; links with infinite weight are unusable. Returns an empty
// vector when dst is unreachable and {src} when src == dst.
std::vector<NodeId> ShortestPath(
    const SubstrateNetwork& net, NodeId src, NodeId dst,
    const std::function<double(int)>& weight);

// Cheapest path by per-MB link cost, with its aggregate cost and its
// bottleneck bandwidth. Used to price and time server-to-server moves
// between non-adjacent servers.
struct TransferPath {
  std::vector<NodeId> nodes;
  double cost_per_mb = 0;
  double bottleneck_mbps = 0;
};
TransferPath CheapestTransferPath(const SubstrateNetwork& net, NodeId src,
                                  NodeId dst);

// Routes o_q -> host(q,1) -> ... -> t_q for every served request, in
// ascending request id then segment order. Each segment takes the
// Dijkstra path with link weight (accumulated load in Mbps + 1). Throws
// RoutingError if a host is missing or endpoints are disconnected.
RoutePlan RouteChainLinks(const SubstrateNetwork& net,
                          const PlacementConfiguration& config,
                          const Scenario& scenario,
                          std::span<const double> traffic);
RoutePlan RouteChainLinks(const SubstrateNetwork& net,
                          const PlacementConfiguration& config,
                          const Scenario& scenario, int epoch);

// Net outflow per request over the concatenated segment edges must be +1
// at the source, -1 at the destination and 0 elsewhere. Paths
// that step over a non-existent link are reported as well.
ConstraintReport CheckFlowConservation(const RoutePlan& plan,
                                       const Scenario& scenario);

// Sum of routed rates per link within bandwidth.
ConstraintReport CheckLinkCapacity(const RoutePlan& plan,
                                   const SubstrateNetwork& net,
                                   const Scenario& scenario, int epoch);
ConstraintReport CheckLinkCapacity(const RoutePlan& plan,
                                   const SubstrateNetwork& net,
                                   std::span<const double> traffic);

// Links traversed by request q, one entry per traversal.
std::vector<int> RequestLinks(const RoutePlan& plan,
                              const SubstrateNetwork& net, int request);

}  // namespace sfcem

#endif  // SFCEM_ROUTING_H_
