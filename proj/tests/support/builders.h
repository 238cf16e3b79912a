#ifndef SFCEM_TESTS_SUPPORT_BUILDERS_H_
#define SFCEM_TESTS_SUPPORT_BUILDERS_H_

#include <optional>
#include <vector>

#include "sfcem/configuration.h"
#include "sfcem/network.h"
#include "sfcem/routing.h"
#include "sfcem/workload.h"

namespace sfcem::testing {

// Hand-built networks for unit tests. Node ids follow insertion order.
class NetBuilder {
 public:
  explicit NetBuilder(int vnf_types = 1) : types_(vnf_types) {}

  Switch& AddSwitch() {
    Switch s;
    s.id = next_++;
    s.lm_capacity_mb = 35;
    s.em_capacity_mb = 500;
    s.rdma_table_mb = 35;
    s.lm_cost_per_mb = 0.0022;
    s.em_cost_per_mb = 0.0003;
    s.lm_unit_delay_ms.assign(types_, 0.02);
    s.rdma_access_delay_ms = 1e-4;
    s.controller_bandwidth_mbps = 50000;
    s.controller_cost_per_mb = 0.001;
    switches_.push_back(s);
    return switches_.back();
  }

  Server& AddServer() {
    Server s;
    s.id = next_++;
    s.storage_capacity_mb = 10000;
    s.storage_cost_per_mb = 0.0025;
    s.vnf_unit_delay_ms.assign(types_, 0.2);
    servers_.push_back(s);
    return servers_.back();
  }

  Link& Connect(NodeId u, NodeId v, double bandwidth_mbps = 40000,
                double cost_per_mb = 0.0009, double delay_ms = 0.5) {
    links_.push_back({u, v, bandwidth_mbps, cost_per_mb, delay_ms});
    return links_.back();
  }

  SubstrateNetwork Build() const { return SubstrateNetwork(switches_, servers_, links_); }

 private:
  int types_;
  int next_ = 0;
  std::vector<Switch> switches_;
  std::vector<Server> servers_;
  std::vector<Link> links_;
};

inline VnfType MakeType(int id, double footprint_mb = 20, int instances = 1) {
  VnfType t;
  t.id = id;
  t.switch_footprint_mb = footprint_mb;
  t.server_footprint_mb = footprint_mb;
  t.switch_capacity_mbps = 100000;
  t.server_capacity_mbps = 30;
  t.programming_traffic_mb = footprint_mb;
  t.instance_count = instances;
  return t;
}

inline SfcRequest MakeRequest(int id, std::vector<int> vnfs, NodeId src, NodeId dst,
                              std::vector<double> traffic, std::vector<double> deadline) {
  SfcRequest q;
  q.id = id;
  q.vnfs = std::move(vnfs);
  q.source = src;
  q.destination = dst;
  q.traffic_mbps = std::move(traffic);
  q.deadline_ms = std::move(deadline);
  return q;
}

// Configuration with the given hosts; position n of every request is
// served by the first instance of its type unless `assignment` is given.
// Routes are computed for max(epoch, 0).
inline PlacementConfiguration MakeConfig(const Scenario& sc, std::vector<HostSlot> hosts,
                                         int epoch,
                                         std::optional<Assignment> assignment = {}) {
  PlacementConfiguration c;
  c.epoch = epoch;
  for (const HostSlot& h : hosts) c.instance_host.push_back(h);
  if (assignment) {
    c.assignment = *assignment;
  } else {
    for (const SfcRequest& q : sc.requests) {
      std::vector<std::optional<int>> row;
      for (int f : q.vnfs) row.push_back(sc.catalog.FlatIndex(f, 0));
      c.assignment.push_back(row);
    }
  }
  c.routes = RouteChainLinks(sc.network, c, sc, epoch < 0 ? 0 : epoch);
  return c;
}

inline Scenario MakeScenario(SubstrateNetwork net, std::vector<VnfType> types,
                             std::vector<SfcRequest> requests, int epochs, int working) {
  Scenario sc;
  sc.network = std::move(net);
  sc.catalog = VnfCatalog(std::move(types));
  sc.requests = std::move(requests);
  sc.schedule = {epochs, working};
  return sc;
}

inline HostSlot Srv(NodeId n) { return {SlotKind::kServer, n}; }
inline HostSlot Lm(NodeId n) { return {SlotKind::kSwitchLocal, n}; }
inline HostSlot Em(NodeId n) { return {SlotKind::kSwitchExternal, n}; }

}  // namespace sfcem::testing

#endif  // SFCEM_TESTS_SUPPORT_BUILDERS_H_
