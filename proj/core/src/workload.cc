#include "sfcem/workload.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sfcem/error.h"
#include "sfcem/placement.h"
#include "sfcem/rng.h"
#include "sfcem/routing.h"
#include "sfcem/units.h"

namespace sfcem {
namespace {

void ValidateRange(const Range& r, const std::string& field, bool positive) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max) {
    throw ConfigError(field + ": empty range");
  }
  if (positive ? r.min <= 0 : r.min < 0) {
    throw ConfigError(field + ": lower bound out of domain");
  }
}

}  // namespace

VnfCatalog::VnfCatalog(std::vector<VnfType> types) : types_(std::move(types)) {
  for (std::size_t f = 0; f < types_.size(); ++f) {
    const VnfType& t = types_[f];
    const std::string field = "vnf_types[" + std::to_string(f) + "]";
    if (t.id != static_cast<int>(f)) throw ConfigError(field + ".id: not dense");
    if (!(t.switch_footprint_mb > 0) || !(t.server_footprint_mb > 0)) {
      throw ConfigError(field + ".footprint: must be positive");
    }
    if (!(t.switch_capacity_mbps > 0) || !(t.server_capacity_mbps > 0)) {
      throw ConfigError(field + ".capacity: must be positive");
    }
    if (!(t.programming_traffic_mb > 0)) {
      throw ConfigError(field + ".programming_traffic_mb: must be positive");
    }
    if (t.instance_count < 1) {
      throw ConfigError(field + ".instance_count: must be at least 1");
    }
    first_.push_back(static_cast<int>(instances_.size()));
    for (int i = 0; i < t.instance_count; ++i) {
      instances_.push_back({t.id, i});
    }
    max_instances_ = std::max(max_instances_, t.instance_count);
  }
}

int VnfCatalog::FlatIndex(int type, int index) const {
  if (type < 0 || type >= type_count() || index < 0 ||
      index >= types_[type].instance_count) {
    throw LookupError("no instance " + std::to_string(index) + " of type " +
                      std::to_string(type));
  }
  return first_[type] + index;
}

std::vector<int> VnfCatalog::InstancesOf(int type) const {
  std::vector<int> out;
  for (int i = 0; i < types_.at(type).instance_count; ++i) {
    out.push_back(first_[type] + i);
  }
  return out;
}

double TrafficAt(const SfcRequest& request, int epoch) {
  if (epoch < 0 || epoch >= static_cast<int>(request.traffic_mbps.size())) {
    throw LookupError("epoch " + std::to_string(epoch) +
                      " outside the schedule of request " +
                      std::to_string(request.id));
  }
  return request.traffic_mbps[epoch];
}

double DeadlineAt(const SfcRequest& request, int epoch) {
  if (epoch < 0 || epoch >= static_cast<int>(request.deadline_ms.size())) {
    throw LookupError("epoch " + std::to_string(epoch) +
                      " outside the schedule of request " +
                      std::to_string(request.id));
  }
  return request.deadline_ms[epoch];
}

std::vector<double> TrafficVector(const Scenario& scenario, int epoch) {
  std::vector<double> out;
  out.reserve(scenario.requests.size());
  for (const SfcRequest& q : scenario.requests) out.push_back(TrafficAt(q, epoch));
  return out;
}

std::vector<double> BaselineTraffic(const Scenario& scenario) {
  std::vector<double> out;
  for (const SfcRequest& q : scenario.requests) {
    out.push_back(*std::min_element(q.traffic_mbps.begin(), q.traffic_mbps.end()));
  }
  return out;
}

void GenParams::Validate() const {
  if (request_count < 1) throw ConfigError("request_count: must be >= 1");
  if (vnf_types < 1) throw ConfigError("vnf_types: must be >= 1");
  if (instances_per_type < 1) {
    throw ConfigError("instances_per_type: must be >= 1");
  }
  if (max_chain_length < 1) throw ConfigError("max_chain_length: must be >= 1");
  ValidateRange(footprint_mb, "footprint_mb", true);
  ValidateRange(server_capacity_mbps, "server_capacity_mbps", true);
  ValidateRange(switch_capacity_gbps, "switch_capacity_gbps", true);
  ValidateRange(working_traffic_mbps, "working_traffic_mbps", true);
  ValidateRange(nonworking_traffic_mbps, "nonworking_traffic_mbps", true);
  ValidateRange(working_deadline_ms, "working_deadline_ms", true);
  ValidateRange(nonworking_deadline_ms, "nonworking_deadline_ms", true);
  if (schedule.epochs < 1) throw ConfigError("schedule.epochs: must be >= 1");
  if (schedule.working_epochs < 0 || schedule.working_epochs > schedule.epochs) {
    throw ConfigError("schedule.working_epochs: must lie in [0, epochs]");
  }
}

VnfCatalog GenerateCatalog(const GenParams& params, uint64_t seed) {
  params.Validate();
  Rng rng(seed);
  std::vector<VnfType> types(params.vnf_types);
  for (int f = 0; f < params.vnf_types; ++f) {
    VnfType& t = types[f];
    t.id = f;
    const double size = rng.Uniform(params.footprint_mb.min, params.footprint_mb.max);
    t.switch_footprint_mb = size;
    t.server_footprint_mb = size;
    t.programming_traffic_mb = size;
    t.server_capacity_mbps =
        rng.Uniform(params.server_capacity_mbps.min, params.server_capacity_mbps.max);
    t.switch_capacity_mbps =
        rng.Uniform(params.switch_capacity_gbps.min, params.switch_capacity_gbps.max) *
        units::kMbpsPerGbps;
    t.instance_count = params.instances_per_type;
  }
  return VnfCatalog(std::move(types));
}

PlacementConfiguration BuildInitialPlacement(const Scenario& scenario,
                                             uint64_t seed) {
  const SubstrateNetwork& net = scenario.network;
  const VnfCatalog& catalog = scenario.catalog;
  PlacementConfiguration config;
  config.epoch = -1;
  config.instance_host.resize(catalog.instance_total());

  std::vector<double> residual;
  for (const Server& m : net.servers()) residual.push_back(m.storage_capacity_mb);
  for (int k = 0; k < catalog.instance_total(); ++k) {
    const VnfType& type = catalog.type_of(k);
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int m = 0; m < net.server_count(); ++m) {
      // Strict fit keeps the host inside every static filter.
      if (!(type.server_footprint_mb < residual[m])) continue;
      const double cost =
          net.servers()[m].storage_cost_per_mb * type.server_footprint_mb;
      if (cost < best_cost) {
        best_cost = cost;
        best = m;
      }
    }
    if (best < 0) {
      throw GenerationError("no server can store instance " + std::to_string(k) +
                            " (type " + std::to_string(type.id) + ")");
    }
    residual[best] -= type.server_footprint_mb;
    config.instance_host[k] = HostSlot{SlotKind::kServer, net.servers()[best].id};
  }

  Rng rng(seed);
  const std::vector<double> baseline = BaselineTraffic(scenario);
  std::vector<double> spare(catalog.instance_total());
  for (int k = 0; k < catalog.instance_total(); ++k) {
    spare[k] = catalog.type_of(k).server_capacity_mbps;
  }
  config.assignment.resize(scenario.requests.size());
  for (const SfcRequest& q : scenario.requests) {
    auto& row = config.assignment[q.id];
    for (int f : q.vnfs) {
      std::vector<int> fitting;
      for (int k : catalog.InstancesOf(f)) {
        if (spare[k] >= baseline[q.id]) fitting.push_back(k);
      }
      if (fitting.empty()) {
        throw GenerationError("no instance of type " + std::to_string(f) +
                              " can absorb request " + std::to_string(q.id));
      }
      const int k = fitting[rng.Index(fitting.size())];
      spare[k] -= baseline[q.id];
      row.push_back(k);
    }
  }
  config.routes = RouteChainLinks(net, config, scenario, baseline);
  return config;
}

Scenario GenerateScenario(const SubstrateNetwork& net, const VnfCatalog& catalog,
                          const GenParams& params, uint64_t seed) {
  params.Validate();
  if (catalog.type_count() != net.vnf_type_count()) {
    throw ConfigError("vnf_types: catalog has " +
                      std::to_string(catalog.type_count()) +
                      " types but the network defines delays for " +
                      std::to_string(net.vnf_type_count()));
  }
  if (net.switch_count() < 2) {
    throw ConfigError("switch_count: requests need two distinct switches");
  }
  Rng rng(seed);
  Scenario scenario;
  scenario.network = net;
  scenario.catalog = catalog;
  scenario.schedule = params.schedule;

  const int max_len = std::min(params.max_chain_length, catalog.type_count());
  for (int q = 0; q < params.request_count; ++q) {
    SfcRequest req;
    req.id = q;
    const int len = 1 + static_cast<int>(rng.Index(max_len));
    std::vector<int> pool(catalog.type_count());
    for (int f = 0; f < catalog.type_count(); ++f) pool[f] = f;
    for (int n = 0; n < len; ++n) {
      const std::size_t pick = n + rng.Index(pool.size() - n);
      std::swap(pool[n], pool[pick]);
      req.vnfs.push_back(pool[n]);
    }
    const int s = net.switch_count();
    const int src = static_cast<int>(rng.Index(s));
    int dst = static_cast<int>(rng.Index(s - 1));
    if (dst >= src) ++dst;
    req.source = net.switches()[src].id;
    req.destination = net.switches()[dst].id;

    // One rate and deadline per regime.
    const double work_rate =
        rng.Uniform(params.working_traffic_mbps.min, params.working_traffic_mbps.max);
    const double idle_rate = rng.Uniform(params.nonworking_traffic_mbps.min,
                                         params.nonworking_traffic_mbps.max);
    const double work_deadline =
        rng.Uniform(params.working_deadline_ms.min, params.working_deadline_ms.max);
    const double idle_deadline = rng.Uniform(params.nonworking_deadline_ms.min,
                                             params.nonworking_deadline_ms.max);
    for (int t = 0; t < params.schedule.epochs; ++t) {
      const bool working = params.schedule.IsWorking(t);
      req.traffic_mbps.push_back(working ? work_rate : idle_rate);
      req.deadline_ms.push_back(working ? work_deadline : idle_deadline);
    }
    scenario.requests.push_back(std::move(req));
  }
  scenario.initial_placement = BuildInitialPlacement(scenario, rng.Next());

  const ConstraintReport report =
      CheckAll(scenario.initial_placement, scenario, BaselineTraffic(scenario));
  if (!report.feasible()) {
    throw GenerationError("initial placement infeasible: " +
                          ToString(report.violations.front().constraint) + " at " +
                          report.violations.front().subject);
  }
  return scenario;
}

Scenario GenerateScenario(const SubstrateNetwork& net, const GenParams& params,
                          uint64_t seed) {
  const VnfCatalog catalog = GenerateCatalog(params, DeriveSeed(seed, 0));
  return GenerateScenario(net, catalog, params, DeriveSeed(seed, 1));
}

}  // namespace sfcem
