#include "sfcem/cost_delay.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sfcem/error.h"
#include "sfcem/routing.h"
#include "sfcem/units.h"

namespace sfcem {
namespace {

const std::optional<HostSlot>& HostOf(const PlacementConfiguration& config,
                                      int k) {
  static const std::optional<HostSlot> kNone;
  if (k < 0 || k >= static_cast<int>(config.instance_host.size())) return kNone;
  return config.instance_host[k];
}

// Instance serving (q, n) in `config`, if any.
std::optional<int> ServingInstance(const PlacementConfiguration& config, int q,
                                   std::size_t n) {
  if (!config.served(q) || q >= static_cast<int>(config.assignment.size()) ||
      n >= config.assignment[q].size()) {
    return std::nullopt;
  }
  return config.assignment[q][n];
}

// True when an instance now on a switch was previously elsewhere: on a
// server, or on a different switch.
bool NewlyProgrammed(const HostSlot& now, const HostSlot& prev) {
  if (!now.on_switch()) return false;
  return !prev.on_switch() || prev.node != now.node;
}

bool MovedBetweenServers(const HostSlot& now, const HostSlot& prev) {
  return now.kind == SlotKind::kServer && prev.kind == SlotKind::kServer &&
         now.node != prev.node;
}

}  // namespace

double ItResourceCost(const PlacementConfiguration& config,
                      const SubstrateNetwork& net, const VnfCatalog& catalog) {
  double total = 0;
  for (std::size_t k = 0; k < config.instance_host.size(); ++k) {
    const auto& slot = config.instance_host[k];
    if (!slot) continue;
    const VnfType& type = catalog.type_of(static_cast<int>(k));
    switch (slot->kind) {
      case SlotKind::kServer:
        total += net.ServerAt(slot->node).storage_cost_per_mb * type.server_footprint_mb;
        break;
      case SlotKind::kSwitchLocal:
        total += net.SwitchAt(slot->node).lm_cost_per_mb * type.switch_footprint_mb;
        break;
      case SlotKind::kSwitchExternal:
        total += net.SwitchAt(slot->node).em_cost_per_mb * type.switch_footprint_mb;
        break;
    }
  }
  return total;
}

double BandwidthCost(const RoutePlan& plan, const SubstrateNetwork& net,
                     const Scenario& scenario, int epoch) {
  double total = 0;
  for (const SfcRequest& q : scenario.requests) {
    const double volume = units::SlotVolumeMb(TrafficAt(q, epoch));
    for (int l : RequestLinks(plan, net, q.id)) {
      total += volume * net.links()[l].cost_per_mb;
    }
  }
  return total;
}

double MigrationCost(const PlacementConfiguration& now,
                     const PlacementConfiguration& prev,
                     const SubstrateNetwork& net, const VnfCatalog& catalog) {
  double total = 0;
  for (int k = 0; k < catalog.instance_total(); ++k) {
    const auto& a = HostOf(now, k);
    const auto& b = HostOf(prev, k);
    if (!a || !b || !MovedBetweenServers(*a, *b)) continue;
    total += catalog.type_of(k).server_footprint_mb *
             CheapestTransferPath(net, b->node, a->node).cost_per_mb;
  }
  return total;
}

double ProgrammingCost(const PlacementConfiguration& now,
                       const PlacementConfiguration& prev,
                       const SubstrateNetwork& net, const VnfCatalog& catalog) {
  double total = 0;
  for (int k = 0; k < catalog.instance_total(); ++k) {
    const auto& a = HostOf(now, k);
    const auto& b = HostOf(prev, k);
    if (!a || !b || !NewlyProgrammed(*a, *b)) continue;
    total += catalog.type_of(k).programming_traffic_mb *
             net.SwitchAt(a->node).controller_cost_per_mb;
  }
  return total;
}

CostBreakdown StepObjective(const PlacementConfiguration& now,
                            const PlacementConfiguration& prev,
                            const RoutePlan& plan, const SubstrateNetwork& net,
                            const Scenario& scenario, int epoch,
                            const Weights& weights) {
  CostBreakdown c;
  c.it_cost = ItResourceCost(now, net, scenario.catalog);
  c.bandwidth_cost = BandwidthCost(plan, net, scenario, epoch);
  c.migration_cost = MigrationCost(now, prev, net, scenario.catalog);
  c.programming_cost = ProgrammingCost(now, prev, net, scenario.catalog);
  c.reconfiguration_cost = c.migration_cost + c.programming_cost;
  c.weighted_total = weights.alpha * (c.it_cost + c.bandwidth_cost) +
                     weights.beta * c.reconfiguration_cost;
  return c;
}

double MigrationDelay(const PlacementConfiguration& now,
                      const PlacementConfiguration& prev,
                      const SubstrateNetwork& net, const VnfCatalog& catalog,
                      const SfcRequest& request) {
  double worst = 0;
  for (std::size_t n = 0; n < request.vnfs.size(); ++n) {
    const auto k = ServingInstance(now, request.id, n);
    if (!k || ServingInstance(prev, request.id, n) != k) continue;
    const auto& a = HostOf(now, *k);
    const auto& b = HostOf(prev, *k);
    if (!a || !b || !MovedBetweenServers(*a, *b)) continue;
    const TransferPath path = CheapestTransferPath(net, b->node, a->node);
    worst = std::max(worst, units::TransferMs(catalog.type_of(*k).server_footprint_mb,
                                              path.bottleneck_mbps));
  }
  return worst;
}

double ProgrammingDelay(const PlacementConfiguration& now,
                        const PlacementConfiguration& prev,
                        const SubstrateNetwork& net, const VnfCatalog& catalog,
                        const SfcRequest& request) {
  double worst = 0;
  for (std::size_t n = 0; n < request.vnfs.size(); ++n) {
    const auto k = ServingInstance(now, request.id, n);
    if (!k || ServingInstance(prev, request.id, n) != k) continue;
    const auto& a = HostOf(now, *k);
    const auto& b = HostOf(prev, *k);
    if (!a || !b || !NewlyProgrammed(*a, *b)) continue;
    worst = std::max(worst,
                     units::TransferMs(catalog.type_of(*k).programming_traffic_mb,
                                       net.SwitchAt(a->node).controller_bandwidth_mbps));
  }
  return worst;
}

int RdmaAccessCount(double footprint_mb, double table_mb) {
  if (!(footprint_mb > 0) || !(table_mb > 0)) {
    throw EvaluationError("RDMA access count needs positive footprint and table");
  }
  auto k = static_cast<long long>(std::ceil(footprint_mb / table_mb));
  // Correct rounding of the quotient so that k is the least integer with
  // k * table >= footprint.
  while (k > 1 && static_cast<double>(k - 1) * table_mb >= footprint_mb) --k;
  while (static_cast<double>(k) * table_mb < footprint_mb) ++k;
  return static_cast<int>(std::max<long long>(k, 1));
}

double EmUnitDelay(const VnfType& vnf, const Switch& sw) {
  const int accesses = RdmaAccessCount(vnf.switch_footprint_mb, sw.rdma_table_mb);
  return accesses * (sw.lm_unit_delay_ms.at(vnf.id) + sw.rdma_access_delay_ms);
}

double UnitProcessingDelay(const SubstrateNetwork& net, const VnfType& type,
                           const HostSlot& slot) {
  switch (slot.kind) {
    case SlotKind::kServer:
      return net.ServerAt(slot.node).vnf_unit_delay_ms.at(type.id);
    case SlotKind::kSwitchLocal:
      return net.SwitchAt(slot.node).lm_unit_delay_ms.at(type.id);
    case SlotKind::kSwitchExternal:
      return EmUnitDelay(type, net.SwitchAt(slot.node));
  }
  return 0;
}

double ProcessingDelay(const PlacementConfiguration& config,
                       const Scenario& scenario, int epoch,
                       const SfcRequest& request) {
  const double volume = units::SlotVolumeMb(TrafficAt(request, epoch));
  double total = 0;
  for (std::size_t n = 0; n < request.vnfs.size(); ++n) {
    const auto k = request.id < static_cast<int>(config.assignment.size()) &&
                           n < config.assignment[request.id].size()
                       ? config.assignment[request.id][n]
                       : std::nullopt;
    if (!k || !HostOf(config, *k)) {
      throw EvaluationError("request " + std::to_string(request.id) +
                            " position " + std::to_string(n) + " is unassigned");
    }
    total += volume * UnitProcessingDelay(scenario.network,
                                          scenario.catalog.type_of(*k),
                                          *HostOf(config, *k));
  }
  return total;
}

double TransmissionDelay(const RoutePlan& plan, const SubstrateNetwork& net,
                         const Scenario& scenario, int epoch,
                         const SfcRequest& request, TransmissionDelayMode mode) {
  (void)scenario;
  const double scale = mode == TransmissionDelayMode::kPerUnit
                           ? units::SlotVolumeMb(TrafficAt(request, epoch))
                           : 1.0;
  double total = 0;
  for (int l : RequestLinks(plan, net, request.id)) {
    total += scale * net.links()[l].delay_ms;
  }
  return total;
}

DelayBreakdown TotalDelay(const PlacementConfiguration& now,
                          const PlacementConfiguration& prev,
                          const Scenario& scenario, int epoch,
                          const SfcRequest& request, TransmissionDelayMode mode) {
  const SubstrateNetwork& net = scenario.network;
  DelayBreakdown d;
  d.migration_delay_ms = MigrationDelay(now, prev, net, scenario.catalog, request);
  d.programming_delay_ms = ProgrammingDelay(now, prev, net, scenario.catalog, request);
  d.reconfig_delay_ms = std::max(d.migration_delay_ms, d.programming_delay_ms);
  d.processing_delay_ms = ProcessingDelay(now, scenario, epoch, request);
  d.transmission_delay_ms =
      TransmissionDelay(now.routes, net, scenario, epoch, request, mode);
  d.total_ms = d.reconfig_delay_ms + d.processing_delay_ms + d.transmission_delay_ms;
  d.deadline_met = d.total_ms < DeadlineAt(request, epoch);
  return d;
}

}  // namespace sfcem
