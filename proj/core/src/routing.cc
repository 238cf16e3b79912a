#include "sfcem/routing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "sfcem/error.h"

namespace sfcem {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (distance, path) ordering used to settle nodes.
bool Better(double da, const std::vector<NodeId>& pa, double db,
            const std::vector<NodeId>& pb) {
  if (da != db) return da < db;
  return pa < pb;
}

}  // namespace

std::vector<NodeId> ShortestPath(const SubstrateNetwork& net, NodeId src,
                                 NodeId dst,
                                 const std::function<double(int)>& weight) {
  if (!net.Contains(src) || !net.Contains(dst)) {
    throw LookupError("path endpoint outside the network");
  }
  if (src == dst) return {src};
  const int n = net.node_count();
  std::vector<double> dist(n, kInf);
  std::vector<std::vector<NodeId>> path(n);
  std::vector<bool> settled(n, false);
  dist[src] = 0;
  path[src] = {src};
  // The graphs are small; an O(V^2) scan keeps the tie-break exact.
  for (int iter = 0; iter < n; ++iter) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (settled[v] || dist[v] == kInf) continue;
      if (u < 0 || Better(dist[v], path[v], dist[u], path[u])) u = v;
    }
    if (u < 0 || u == dst) break;
    settled[u] = true;
    for (const auto& adj : net.adjacency(u)) {
      if (settled[adj.node]) continue;
      const double w = weight(adj.link);
      if (w == kInf) continue;
      const double cand = dist[u] + w;
      std::vector<NodeId> cand_path = path[u];
      cand_path.push_back(adj.node);
      if (dist[adj.node] == kInf ||
          Better(cand, cand_path, dist[adj.node], path[adj.node])) {
        dist[adj.node] = cand;
        path[adj.node] = std::move(cand_path);
      }
    }
  }
  if (dist[dst] == kInf) return {};
  return path[dst];
}

TransferPath CheapestTransferPath(const SubstrateNetwork& net, NodeId src,
                                  NodeId dst) {
  TransferPath out;
  out.nodes = ShortestPath(net, src, dst,
                           [&](int l) { return net.links()[l].cost_per_mb; });
  if (out.nodes.empty()) {
    throw RoutingError("no path between nodes " + std::to_string(src) + " and " +
                       std::to_string(dst));
  }
  out.bottleneck_mbps = kInf;
  for (std::size_t i = 1; i < out.nodes.size(); ++i) {
    const Link& l = net.links()[*net.LinkBetween(out.nodes[i - 1], out.nodes[i])];
    out.cost_per_mb += l.cost_per_mb;
    out.bottleneck_mbps = std::min(out.bottleneck_mbps, l.bandwidth_mbps);
  }
  return out;
}

RoutePlan RouteChainLinks(const SubstrateNetwork& net,
                          const PlacementConfiguration& config,
                          const Scenario& scenario,
                          std::span<const double> traffic) {
  RoutePlan plan;
  plan.link_load_mbps.assign(net.links().size(), 0.0);
  plan.paths.resize(scenario.requests.size());
  auto weight = [&](int l) { return plan.link_load_mbps[l] + 1.0; };

  for (const SfcRequest& q : scenario.requests) {
    if (!config.served(q.id)) continue;
    std::vector<NodeId> waypoints{q.source};
    for (std::size_t n = 0; n < q.vnfs.size(); ++n) {
      const auto& k = q.id < static_cast<int>(config.assignment.size()) &&
                              n < config.assignment[q.id].size()
                          ? config.assignment[q.id][n]
                          : std::optional<int>();
      if (!k || *k < 0 || *k >= static_cast<int>(config.instance_host.size()) ||
          !config.instance_host[*k]) {
        throw RoutingError("request " + std::to_string(q.id) + " position " +
                           std::to_string(n) + " has no host");
      }
      waypoints.push_back(config.instance_host[*k]->node);
    }
    waypoints.push_back(q.destination);

    auto& segments = plan.paths[q.id];
    for (std::size_t l = 0; l + 1 < waypoints.size(); ++l) {
      const NodeId a = waypoints[l];
      const NodeId b = waypoints[l + 1];
      if (a == b) {
        segments.emplace_back();
        continue;
      }
      std::vector<NodeId> path = ShortestPath(net, a, b, weight);
      if (path.empty()) {
        throw RoutingError("request " + std::to_string(q.id) + " segment " +
                           std::to_string(l) + ": nodes " + std::to_string(a) +
                           " and " + std::to_string(b) + " are disconnected");
      }
      for (std::size_t i = 1; i < path.size(); ++i) {
        plan.link_load_mbps[*net.LinkBetween(path[i - 1], path[i])] += traffic[q.id];
      }
      segments.push_back(std::move(path));
    }
  }
  return plan;
}

RoutePlan RouteChainLinks(const SubstrateNetwork& net,
                          const PlacementConfiguration& config,
                          const Scenario& scenario, int epoch) {
  return RouteChainLinks(net, config, scenario, TrafficVector(scenario, epoch));
}

ConstraintReport CheckFlowConservation(const RoutePlan& plan,
                                       const Scenario& scenario) {
  const SubstrateNetwork& net = scenario.network;
  ConstraintReport report;
  for (const SfcRequest& q : scenario.requests) {
    if (q.id >= static_cast<int>(plan.paths.size()) || plan.paths[q.id].empty()) {
      continue;  // not routed (unserved)
    }
    std::map<NodeId, int> outflow;
    for (const auto& path : plan.paths[q.id]) {
      for (std::size_t i = 1; i < path.size(); ++i) {
        if (!net.LinkBetween(path[i - 1], path[i])) {
          report.violations.push_back(
              {ConstraintId::kFlowConservation,
               "request " + std::to_string(q.id) + " uses missing link " +
                   std::to_string(path[i - 1]) + "-" + std::to_string(path[i]),
               1.0});
        }
        ++outflow[path[i - 1]];
        --outflow[path[i]];
      }
    }
    for (NodeId u = 0; u < net.node_count(); ++u) {
      int expected = 0;
      if (u == q.source) expected += 1;
      if (u == q.destination) expected -= 1;
      const auto it = outflow.find(u);
      const int actual = it == outflow.end() ? 0 : it->second;
      if (actual != expected) {
        report.violations.push_back(
            {ConstraintId::kFlowConservation,
             "request " + std::to_string(q.id) + " node " + std::to_string(u),
             std::abs(static_cast<double>(actual - expected))});
      }
    }
  }
  return report;
}

ConstraintReport CheckLinkCapacity(const RoutePlan& plan,
                                   const SubstrateNetwork& net,
                                   std::span<const double> traffic) {
  std::vector<double> load(net.links().size(), 0.0);
  for (std::size_t q = 0; q < plan.paths.size(); ++q) {
    for (int l : RequestLinks(plan, net, static_cast<int>(q))) load[l] += traffic[q];
  }
  ConstraintReport report;
  for (std::size_t l = 0; l < load.size(); ++l) {
    const Link& link = net.links()[l];
    const double over = load[l] - link.bandwidth_mbps;
    if (over > 0) {
      report.violations.push_back({ConstraintId::kLinkCapacity,
                                   "link " + std::to_string(link.u) + "-" +
                                       std::to_string(link.v),
                                   over});
    }
  }
  return report;
}

ConstraintReport CheckLinkCapacity(const RoutePlan& plan,
                                   const SubstrateNetwork& net,
                                   const Scenario& scenario, int epoch) {
  return CheckLinkCapacity(plan, net, TrafficVector(scenario, epoch));
}

std::vector<int> RequestLinks(const RoutePlan& plan, const SubstrateNetwork& net,
                              int request) {
  std::vector<int> out;
  if (request < 0 || request >= static_cast<int>(plan.paths.size())) return out;
  for (const auto& path : plan.paths[request]) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      const auto l = net.LinkBetween(path[i - 1], path[i]);
      if (l) out.push_back(*l);
    }
  }
  return out;
}

}  // namespace sfcem
