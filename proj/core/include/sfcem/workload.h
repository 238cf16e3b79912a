#ifndef SFCEM_WORKLOAD_H_
#define SFCEM_WORKLOAD_H_

#include <cstdint>
#include <vector>

#include "sfcem/configuration.h"
#include "sfcem/network.h"

namespace sfcem {

struct VnfType {
  int id = 0;
  double switch_footprint_mb = 0;
  double server_footprint_mb = 0;
  double switch_capacity_mbps = 0;
  double server_capacity_mbps = 0;
  // Control-plane data pushed to a switch to program the function.
  double programming_traffic_mb = 0;
  int instance_count = 0;

  bool operator==(const VnfType&) const = default;
};

struct VnfInstance {
  int type = 0;
  int index = 0;
  bool operator==(const VnfInstance&) const = default;
};

// VNF types plus the dense "flat" numbering of their instances: all
// instances of type 0 first, then type 1, and so on.
class VnfCatalog {
 public:
  VnfCatalog() = default;
  explicit VnfCatalog(std::vector<VnfType> types);

  const std::vector<VnfType>& types() const { return types_; }
  const VnfType& type(int id) const { return types_.at(id); }
  int type_count() const { return static_cast<int>(types_.size()); }
  int instance_total() const { return static_cast<int>(instances_.size()); }
  int max_instances_per_type() const { return max_instances_; }
  const VnfInstance& instance(int flat) const { return instances_.at(flat); }
  const VnfType& type_of(int flat) const { return types_[instance(flat).type]; }
  int FlatIndex(int type, int index) const;
  // Flat indices of the instances of one type.
  std::vector<int> InstancesOf(int type) const;

  bool operator==(const VnfCatalog& o) const { return types_ == o.types_; }

 private:
  std::vector<VnfType> types_;
  std::vector<VnfInstance> instances_;
  std::vector<int> first_;
  int max_instances_ = 0;
};

struct SfcRequest {
  int id = 0;
  // Ordered VNF types of the chain.
  std::vector<int> vnfs;
  NodeId source = 0;
  NodeId destination = 0;
  // Per-epoch rate (Mbps) and deadline (ms).
  std::vector<double> traffic_mbps;
  std::vector<double> deadline_ms;

  bool operator==(const SfcRequest&) const = default;
};

// Throw LookupError for an epoch outside the request's schedule.
double TrafficAt(const SfcRequest& request, int epoch);
double DeadlineAt(const SfcRequest& request, int epoch);

// Epochs [0, working_epochs) are working hours, the rest are not.
struct EpochSchedule {
  int epochs = 6;
  int working_epochs = 3;

  bool IsWorking(int epoch) const { return epoch < working_epochs; }
  bool operator==(const EpochSchedule&) const = default;
};

// A self-contained problem instance. The initial placement is the
// pre-horizon configuration (epoch -1); it is feasible under every
// request's baseline (minimum) traffic.
struct Scenario {
  SubstrateNetwork network;
  VnfCatalog catalog;
  std::vector<SfcRequest> requests;
  EpochSchedule schedule;
  PlacementConfiguration initial_placement;

  int epochs() const { return schedule.epochs; }
  int request_count() const { return static_cast<int>(requests.size()); }
  bool operator==(const Scenario&) const = default;
};

// Per-request rate vector for one epoch.
std::vector<double> TrafficVector(const Scenario& scenario, int epoch);
// Per-request minimum rate over the horizon.
std::vector<double> BaselineTraffic(const Scenario& scenario);

struct GenParams {
  int request_count = 90;
  int vnf_types = 4;
  int instances_per_type = 2;
  int max_chain_length = 4;
  Range footprint_mb{10, 50};
  Range server_capacity_mbps{25, 40};
  Range switch_capacity_gbps{100, 100};
  EpochSchedule schedule;
  Range working_traffic_mbps{15, 35};
  Range nonworking_traffic_mbps{0.2, 0.5};
  Range working_deadline_ms{8, 12};
  Range nonworking_deadline_ms{3, 8};

  void Validate() const;
  bool operator==(const GenParams&) const = default;
};

// Draws VNF types. Each type has one size used as both footprints and as
// its programming traffic.
VnfCatalog GenerateCatalog(const GenParams& params, uint64_t seed);

// Draws requests and the initial placement over a fixed network and
// catalog. Throws GenerationError when no feasible initial placement
// exists for this seed.
Scenario GenerateScenario(const SubstrateNetwork& net, const VnfCatalog& catalog,
                          const GenParams& params, uint64_t seed);

// Same, drawing the catalog from the seed as well.
Scenario GenerateScenario(const SubstrateNetwork& net, const GenParams& params,
                          uint64_t seed);

// Deploys every instance on the cheapest server with room for it, then
// maps each chain VNF to a random instance of its type with spare capacity
// for the chain's baseline traffic. Routes are computed under baseline
// traffic.
PlacementConfiguration BuildInitialPlacement(const Scenario& scenario,
                                             uint64_t seed);

}  // namespace sfcem

#endif  // SFCEM_WORKLOAD_H_
