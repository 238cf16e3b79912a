#include "sfcem/baselines.h"

#include <limits>

#include "sfcem/cost_delay.h"
#include "sfcem/error.h"
#include "sfcem/placement.h"
#include "sfcem/routing.h"
#include "sfcem/units.h"

namespace sfcem {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double HostingCost(const SubstrateNetwork& net, const VnfType& type,
                   const HostSlot& slot) {
  return slot.kind == SlotKind::kServer
             ? net.ServerAt(slot.node).storage_cost_per_mb * type.server_footprint_mb
             : net.SwitchAt(slot.node).lm_cost_per_mb * type.switch_footprint_mb;
}

double MoveCost(const SubstrateNetwork& net, const VnfType& type,
                const HostSlot& from, const HostSlot& to) {
  if (to.on_switch()) {
    if (from.on_switch() && from.node == to.node) return 0;
    return type.programming_traffic_mb * net.SwitchAt(to.node).controller_cost_per_mb;
  }
  if (from.kind == SlotKind::kServer && from.node != to.node) {
    return type.server_footprint_mb *
           CheapestTransferPath(net, from.node, to.node).cost_per_mb;
  }
  return 0;
}

struct LagState {
  Action hosts;
  std::vector<bool> opened;
  std::vector<double> load;
  Occupancy occ;
  std::vector<double> link_used;
};

// Cheapest path over links that can still carry `rate`; empty if none.
std::vector<NodeId> ResidualPath(const SubstrateNetwork& net, const LagState& st,
                                 NodeId a, NodeId b, double rate) {
  return ShortestPath(net, a, b, [&](int l) {
    const Link& link = net.links()[l];
    return link.bandwidth_mbps - st.link_used[l] >= rate ? link.cost_per_mb : kInf;
  });
}

double PathCost(const SubstrateNetwork& net, const std::vector<NodeId>& path) {
  double c = 0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    c += net.links()[*net.LinkBetween(path[i - 1], path[i])].cost_per_mb;
  }
  return c;
}

void Reserve(const SubstrateNetwork& net, LagState& st,
             const std::vector<NodeId>& path, double rate) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    st.link_used[*net.LinkBetween(path[i - 1], path[i])] += rate;
  }
}

struct Candidate {
  double cost = kInf;
  HostSlot slot;
  int instance = -1;
  std::vector<NodeId> path;
};

bool PlaceRequest(const Scenario& scenario, const SfcRequest& q, int epoch,
                  const std::vector<HostSlot>& slots, LagState& st,
                  std::vector<std::optional<int>>& chain) {
  const SubstrateNetwork& net = scenario.network;
  const VnfCatalog& catalog = scenario.catalog;
  const double rate = TrafficAt(q, epoch);
  const double volume = units::SlotVolumeMb(rate);
  const double bound = DeadlineAt(q, epoch) / static_cast<double>(q.vnfs.size());
  NodeId at = q.source;
  for (std::size_t n = 0; n < q.vnfs.size(); ++n) {
    const int f = q.vnfs[n];
    const VnfType& type = catalog.type(f);
    const std::vector<int> pool = catalog.InstancesOf(f);
    Candidate best;
    for (const HostSlot& slot : slots) {
      if (volume * UnitProcessingDelay(net, type, slot) > bound) continue;
      const double cap = ProcessingCapacity(type, slot);
      if (rate > cap) continue;

      int chosen = -1;
      double host_cost = 0;
      for (int k : pool) {
        if (st.opened[k] && st.hosts[k] == slot && st.load[k] + rate <= cap) {
          chosen = k;
          break;
        }
      }
      if (chosen < 0) {
        for (int k : pool) {
          if (!st.opened[k] && st.hosts[k] == slot) {
            chosen = k;
            break;
          }
        }
        if (chosen < 0) {
          const double residual =
              Occupancy::Capacity(net, slot) - st.occ.Used(net, slot);
          for (int k : pool) {
            if (!st.opened[k] && residual > Occupancy::Footprint(type, slot)) {
              chosen = k;
              break;
            }
          }
        }
        if (chosen < 0) continue;
        host_cost = HostingCost(net, type, slot) +
                    MoveCost(net, type, st.hosts[chosen], slot);
      }

      std::vector<NodeId> path = ResidualPath(net, st, at, slot.node, rate);
      if (path.empty()) continue;
      const double cost = host_cost + volume * PathCost(net, path);
      if (cost < best.cost) best = {cost, slot, chosen, std::move(path)};
    }
    if (best.instance < 0) return false;

    const int k = best.instance;
    if (!st.opened[k]) {
      if (st.hosts[k] != best.slot) {
        st.occ.UsedRef(net, st.hosts[k]) -= Occupancy::Footprint(type, st.hosts[k]);
        st.occ.UsedRef(net, best.slot) += Occupancy::Footprint(type, best.slot);
        st.hosts[k] = best.slot;
      }
      st.opened[k] = true;
    }
    st.load[k] += rate;
    Reserve(net, st, best.path, rate);
    chain[n] = k;
    at = best.slot.node;
  }
  const std::vector<NodeId> tail = ResidualPath(net, st, at, q.destination, rate);
  if (tail.empty()) return false;
  Reserve(net, st, tail, rate);
  return true;
}

}  // namespace

std::string ToString(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kRandom:
      return "random";
    case PolicyKind::kServerOnlyDrl:
      return "ddqn-cm";
    case PolicyKind::kLagHeuristic:
      return "lag";
    case PolicyKind::kSrEm:
      return "sr-em";
  }
  return "?";
}

PolicyKind ParsePolicyKind(const std::string& text) {
  if (text == "random") return PolicyKind::kRandom;
  if (text == "ddqn-cm" || text == "server_only_drl") return PolicyKind::kServerOnlyDrl;
  if (text == "lag" || text == "lag_heuristic") return PolicyKind::kLagHeuristic;
  if (text == "sr-em" || text == "sr_em") return PolicyKind::kSrEm;
  throw ConfigError("policy: unknown value '" + text + "'");
}

Action RandomStep(const PlacementConfiguration& prev, const Scenario& scenario,
                  Rng& rng) {
  return RandomAction(prev, scenario, rng).action;
}

Decision RandomPolicy::Decide(const PlacementConfiguration& prev,
                              const Scenario& scenario, int, Rng& rng) const {
  return {RandomStep(prev, scenario, rng), std::nullopt, {}};
}

TrainingConfig ServerOnlyConfig(TrainingConfig base) {
  base.servers_only = true;
  base.filter_mode = FilterMode::kHybrid;
  base.reward = RewardKind::kNegativeDelayMigration;
  return base;
}

TrainingResult TrainServerOnly(std::span<const Scenario> train_set,
                               const TrainingConfig& base,
                               const TrainingObserver& observer) {
  return Train(train_set, ServerOnlyConfig(base), observer);
}

Decision LagStep(const PlacementConfiguration& prev, const Scenario& scenario,
                 int epoch) {
  const SubstrateNetwork& net = scenario.network;
  const VnfCatalog& catalog = scenario.catalog;
  const SlotSpace space(net);
  std::vector<HostSlot> slots;
  for (const HostSlot& s : space.slots()) {
    if (s.kind != SlotKind::kSwitchExternal) slots.push_back(s);
  }

  LagState st;
  for (int k = 0; k < catalog.instance_total(); ++k) {
    if (!prev.instance_host[k]) {
      throw MalformedActionError("previous configuration leaves instance " +
                                 std::to_string(k) + " unhosted");
    }
    st.hosts.push_back(*prev.instance_host[k]);
  }
  st.opened.assign(catalog.instance_total(), false);
  st.load.assign(catalog.instance_total(), 0.0);
  st.occ = ComputeOccupancy(prev.instance_host, net, catalog);
  st.link_used.assign(net.links().size(), 0.0);

  Decision d;
  Assignment assignment = prev.assignment;
  d.unserved.assign(scenario.request_count(), false);
  for (const SfcRequest& q : scenario.requests) {
    LagState snapshot = st;
    std::vector<std::optional<int>> chain(q.vnfs.size());
    if (PlaceRequest(scenario, q, epoch, slots, st, chain)) {
      assignment[q.id] = std::move(chain);
    } else {
      st = std::move(snapshot);
      d.unserved[q.id] = true;
    }
  }
  d.hosts = std::move(st.hosts);
  d.assignment = std::move(assignment);
  return d;
}

Decision LagPolicy::Decide(const PlacementConfiguration& prev,
                           const Scenario& scenario, int epoch, Rng&) const {
  return LagStep(prev, scenario, epoch);
}

}  // namespace sfcem
