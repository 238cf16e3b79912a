#include "sfcem/placement.h"

#include <string>

#include "sfcem/error.h"
#include "sfcem/routing.h"

namespace sfcem {
namespace {

std::string InstanceName(const VnfCatalog& catalog, int flat) {
  const VnfInstance& inst = catalog.instance(flat);
  return "instance f" + std::to_string(inst.type) + "#" +
         std::to_string(inst.index);
}

// Validates that every entry names an existing slot.
void ValidateAction(const Action& action, const Scenario& scenario) {
  const int total = scenario.catalog.instance_total();
  if (static_cast<int>(action.size()) != total) {
    throw MalformedActionError("action covers " + std::to_string(action.size()) +
                               " of " + std::to_string(total) + " instances");
  }
  const SubstrateNetwork& net = scenario.network;
  for (std::size_t k = 0; k < action.size(); ++k) {
    const HostSlot& slot = action[k];
    const bool ok = net.Contains(slot.node) &&
                    (slot.kind == SlotKind::kServer ? net.IsServer(slot.node)
                                                    : net.IsSwitch(slot.node));
    if (!ok) {
      throw MalformedActionError("action for instance " + std::to_string(k) +
                                 " names invalid slot " + ToString(slot));
    }
  }
}

}  // namespace

std::string ToString(ConstraintId id) {
  switch (id) {
    case ConstraintId::kEmStorage:
      return "EM-storage";
    case ConstraintId::kLmStorage:
      return "LM-storage";
    case ConstraintId::kServerStorage:
      return "server-storage";
    case ConstraintId::kUniqueness:
      return "uniqueness";
    case ConstraintId::kAssignment:
      return "assignment";
    case ConstraintId::kSwitchProcessing:
      return "switch-processing-capacity";
    case ConstraintId::kServerProcessing:
      return "server-processing-capacity";
    case ConstraintId::kLinkCapacity:
      return "link-capacity";
    case ConstraintId::kFlowConservation:
      return "flow-conservation";
  }
  return "?";
}

int ConstraintReport::Count(ConstraintId id) const {
  int n = 0;
  for (const Violation& v : violations) n += v.constraint == id;
  return n;
}

void ConstraintReport::Append(const ConstraintReport& other) {
  violations.insert(violations.end(), other.violations.begin(),
                    other.violations.end());
}

double Occupancy::Footprint(const VnfType& type, const HostSlot& slot) {
  return slot.kind == SlotKind::kServer ? type.server_footprint_mb
                                        : type.switch_footprint_mb;
}

double Occupancy::Capacity(const SubstrateNetwork& net, const HostSlot& slot) {
  switch (slot.kind) {
    case SlotKind::kServer:
      return net.ServerAt(slot.node).storage_capacity_mb;
    case SlotKind::kSwitchLocal:
      return net.SwitchAt(slot.node).lm_capacity_mb;
    case SlotKind::kSwitchExternal:
      return net.SwitchAt(slot.node).em_capacity_mb;
  }
  return 0;
}

double Occupancy::Used(const SubstrateNetwork& net, const HostSlot& slot) const {
  switch (slot.kind) {
    case SlotKind::kServer:
      return server_mb[net.ServerIndex(slot.node)];
    case SlotKind::kSwitchLocal:
      return lm_mb[net.SwitchIndex(slot.node)];
    case SlotKind::kSwitchExternal:
      return em_mb[net.SwitchIndex(slot.node)];
  }
  return 0;
}

double& Occupancy::UsedRef(const SubstrateNetwork& net, const HostSlot& slot) {
  switch (slot.kind) {
    case SlotKind::kServer:
      return server_mb[net.ServerIndex(slot.node)];
    case SlotKind::kSwitchLocal:
      return lm_mb[net.SwitchIndex(slot.node)];
    case SlotKind::kSwitchExternal:
      break;
  }
  return em_mb[net.SwitchIndex(slot.node)];
}

Occupancy ComputeOccupancy(std::span<const std::optional<HostSlot>> hosts,
                           const SubstrateNetwork& net,
                           const VnfCatalog& catalog) {
  Occupancy occ;
  occ.server_mb.assign(net.server_count(), 0.0);
  occ.lm_mb.assign(net.switch_count(), 0.0);
  occ.em_mb.assign(net.switch_count(), 0.0);
  for (std::size_t k = 0; k < hosts.size(); ++k) {
    if (!hosts[k]) continue;
    occ.UsedRef(net, *hosts[k]) +=
        Occupancy::Footprint(catalog.type_of(static_cast<int>(k)), *hosts[k]);
  }
  return occ;
}

double ProcessingCapacity(const VnfType& type, const HostSlot& slot) {
  return slot.kind == SlotKind::kServer ? type.server_capacity_mbps
                                        : type.switch_capacity_mbps;
}

std::vector<double> InstanceLoads(const PlacementConfiguration& config,
                                  const Scenario& scenario,
                                  std::span<const double> traffic) {
  std::vector<double> load(scenario.catalog.instance_total(), 0.0);
  for (std::size_t q = 0; q < config.assignment.size(); ++q) {
    if (!config.served(static_cast<int>(q))) continue;
    for (const auto& k : config.assignment[q]) {
      if (k && *k >= 0 && *k < static_cast<int>(load.size())) {
        load[*k] += traffic[q];
      }
    }
  }
  return load;
}

ConstraintReport CheckStorage(const PlacementConfiguration& config,
                              const SubstrateNetwork& net,
                              const VnfCatalog& catalog) {
  const Occupancy occ = ComputeOccupancy(config.instance_host, net, catalog);
  ConstraintReport report;
  for (int m = 0; m < net.server_count(); ++m) {
    const double over = occ.server_mb[m] - net.servers()[m].storage_capacity_mb;
    if (over > 0) {
      report.violations.push_back({ConstraintId::kServerStorage,
                                   "server " + std::to_string(net.servers()[m].id),
                                   over});
    }
  }
  for (int s = 0; s < net.switch_count(); ++s) {
    const Switch& sw = net.switches()[s];
    const double lm_over = occ.lm_mb[s] - sw.lm_capacity_mb;
    if (lm_over > 0) {
      report.violations.push_back(
          {ConstraintId::kLmStorage, "switch " + std::to_string(sw.id) + " LM",
           lm_over});
    }
    const double em_over = occ.em_mb[s] - sw.em_capacity_mb;
    if (em_over > 0) {
      report.violations.push_back(
          {ConstraintId::kEmStorage, "switch " + std::to_string(sw.id) + " EM",
           em_over});
    }
  }
  return report;
}

ConstraintReport CheckUniquenessAndAssignment(const PlacementConfiguration& config,
                                              const Scenario& scenario) {
  const VnfCatalog& catalog = scenario.catalog;
  ConstraintReport report;
  for (int k = 0; k < catalog.instance_total(); ++k) {
    const bool hosted = k < static_cast<int>(config.instance_host.size()) &&
                        config.instance_host[k].has_value();
    if (!hosted) {
      report.violations.push_back(
          {ConstraintId::kUniqueness, InstanceName(catalog, k), 1.0});
    }
  }
  if (config.instance_host.size() > static_cast<std::size_t>(catalog.instance_total())) {
    report.violations.push_back(
        {ConstraintId::kUniqueness, "unknown instances in host map", 1.0});
  }
  for (const SfcRequest& q : scenario.requests) {
    const std::string who = "request " + std::to_string(q.id);
    if (q.id >= static_cast<int>(config.assignment.size()) ||
        config.assignment[q.id].size() != q.vnfs.size()) {
      report.violations.push_back(
          {ConstraintId::kAssignment, who + " positions", 1.0});
      continue;
    }
    for (std::size_t n = 0; n < q.vnfs.size(); ++n) {
      const auto& k = config.assignment[q.id][n];
      const std::string pos = who + " position " + std::to_string(n);
      if (!k || *k < 0 || *k >= catalog.instance_total()) {
        report.violations.push_back({ConstraintId::kAssignment, pos, 1.0});
      } else if (catalog.instance(*k).type != q.vnfs[n]) {
        report.violations.push_back(
            {ConstraintId::kAssignment, pos + " type mismatch", 1.0});
      }
    }
  }
  return report;
}

ConstraintReport CheckProcessingCapacity(const PlacementConfiguration& config,
                                         const Scenario& scenario,
                                         std::span<const double> traffic) {
  const VnfCatalog& catalog = scenario.catalog;
  const std::vector<double> load = InstanceLoads(config, scenario, traffic);
  ConstraintReport report;
  for (int k = 0; k < catalog.instance_total(); ++k) {
    if (k >= static_cast<int>(config.instance_host.size()) ||
        !config.instance_host[k] || load[k] == 0) {
      continue;
    }
    const HostSlot& slot = *config.instance_host[k];
    const double over = load[k] - ProcessingCapacity(catalog.type_of(k), slot);
    if (over > 0) {
      report.violations.push_back({slot.on_switch()
                                       ? ConstraintId::kSwitchProcessing
                                       : ConstraintId::kServerProcessing,
                                   InstanceName(catalog, k), over});
    }
  }
  return report;
}

ConstraintReport CheckProcessingCapacity(const PlacementConfiguration& config,
                                         const Scenario& scenario, int epoch) {
  return CheckProcessingCapacity(config, scenario, TrafficVector(scenario, epoch));
}

ConstraintReport CheckAll(const PlacementConfiguration& config,
                          const Scenario& scenario,
                          std::span<const double> traffic) {
  ConstraintReport report =
      CheckStorage(config, scenario.network, scenario.catalog);
  report.Append(CheckUniquenessAndAssignment(config, scenario));
  report.Append(CheckProcessingCapacity(config, scenario, traffic));
  report.Append(CheckLinkCapacity(config.routes, scenario.network, traffic));
  report.Append(CheckFlowConservation(config.routes, scenario));
  return report;
}

ConstraintReport CheckAll(const PlacementConfiguration& config,
                          const Scenario& scenario, int epoch) {
  return CheckAll(config, scenario, TrafficVector(scenario, epoch));
}

PlacementConfiguration ApplyReassignment(const PlacementConfiguration& prev,
                                         const Action& action,
                                         Assignment assignment,
                                         std::vector<bool> unserved,
                                         const Scenario& scenario, int epoch) {
  if (epoch != prev.epoch + 1) {
    throw MalformedActionError("action for epoch " + std::to_string(epoch) +
                               " applied to configuration of epoch " +
                               std::to_string(prev.epoch));
  }
  ValidateAction(action, scenario);
  PlacementConfiguration next;
  next.epoch = epoch;
  next.instance_host.assign(action.begin(), action.end());
  next.assignment = std::move(assignment);
  next.unserved = std::move(unserved);
  next.routes = RouteChainLinks(scenario.network, next, scenario, epoch);
  return next;
}

PlacementConfiguration ApplyAction(const PlacementConfiguration& prev,
                                   const Action& action, const Scenario& scenario,
                                   int epoch) {
  return ApplyReassignment(prev, action, prev.assignment, {}, scenario, epoch);
}

}  // namespace sfcem
