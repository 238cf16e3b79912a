#ifndef SFCEM_PLACEMENT_H_
#define SFCEM_PLACEMENT_H_

#include <span>
#include <string>
#include <vector>

#include "sfcem/configuration.h"
#include "sfcem/workload.h"

namespace sfcem {

enum class ConstraintId {
  kEmStorage,
  kLmStorage,
  kServerStorage,
  kUniqueness,
  kAssignment,
  kSwitchProcessing,
  kServerProcessing,
  kLinkCapacity,
  kFlowConservation,
};

std::string ToString(ConstraintId id);

struct Violation {
  ConstraintId constraint;
  std::string subject;
  // MB for storage, Mbps for processing and links, |net flow error| for
  // flow conservation, 1 for structural violations.
  double overload = 0;
};

struct ConstraintReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
  int Count(ConstraintId id) const;
  bool Has(ConstraintId id) const { return Count(id) > 0; }
  void Append(const ConstraintReport& other);
};

// Storage used per server, LM and EM (MB), indexed by server / switch
// index. Instances without a host are ignored.
struct Occupancy {
  std::vector<double> server_mb;
  std::vector<double> lm_mb;
  std::vector<double> em_mb;

  // Footprint of `type` in `slot` and the slot's capacity.
  static double Footprint(const VnfType& type, const HostSlot& slot);
  static double Capacity(const SubstrateNetwork& net, const HostSlot& slot);
  double Used(const SubstrateNetwork& net, const HostSlot& slot) const;
  double& UsedRef(const SubstrateNetwork& net, const HostSlot& slot);
};

Occupancy ComputeOccupancy(std::span<const std::optional<HostSlot>> hosts,
                           const SubstrateNetwork& net,
                           const VnfCatalog& catalog);

// Processing load per flat instance (Mbps) for the given per-request rates.
std::vector<double> InstanceLoads(const PlacementConfiguration& config,
                                  const Scenario& scenario,
                                  std::span<const double> traffic);

// Capacity of an instance of `type` hosted in `slot`.
double ProcessingCapacity(const VnfType& type, const HostSlot& slot);

// Storage bounds of servers, LMs and EMs.
ConstraintReport CheckStorage(const PlacementConfiguration& config,
                              const SubstrateNetwork& net,
                              const VnfCatalog& catalog);

// Each instance has exactly one host; each chain position is served
// by exactly one instance of the matching type.
ConstraintReport CheckUniquenessAndAssignment(
    const PlacementConfiguration& config, const Scenario& scenario);

// Per-instance processing load within capacity.
ConstraintReport CheckProcessingCapacity(const PlacementConfiguration& config,
                                         const Scenario& scenario, int epoch);
ConstraintReport CheckProcessingCapacity(const PlacementConfiguration& config,
                                         const Scenario& scenario,
                                         std::span<const double> traffic);

// Every check above plus link capacity and flow conservation of the
// configuration's routes.
ConstraintReport CheckAll(const PlacementConfiguration& config,
                          const Scenario& scenario, int epoch);
ConstraintReport CheckAll(const PlacementConfiguration& config,
                          const Scenario& scenario,
                          std::span<const double> traffic);

// Next-epoch configuration: hosts replaced by `action`, chain assignments
// carried over, routes recomputed for `epoch`. Throws MalformedActionError
// when the action does not cover every instance or names a bad slot, and
// when epoch != prev.epoch + 1.
PlacementConfiguration ApplyAction(const PlacementConfiguration& prev,
                                   const Action& action,
                                   const Scenario& scenario, int epoch);

// Like ApplyAction but with a new assignment and admission set, for
// policies that re-map chains to instances.
PlacementConfiguration ApplyReassignment(const PlacementConfiguration& prev,
                                         const Action& action,
                                         Assignment assignment,
                                         std::vector<bool> unserved,
                                         const Scenario& scenario, int epoch);

}  // namespace sfcem

#endif  // SFCEM_PLACEMENT_H_
