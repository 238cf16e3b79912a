#ifndef SFCEM_COST_DELAY_H_
#define SFCEM_COST_DELAY_H_

#include "sfcem/configuration.h"
#include "sfcem/workload.h"

namespace sfcem {

struct Weights {
  double alpha = 1.0;  // resource usage (IT + bandwidth)
  double beta = 1.0;   // reconfiguration (migration + programming)
  bool operator==(const Weights&) const = default;
};

// How link delay enters the transmission delay: scaled by the chain's
// per-slot traffic volume (the literal model), or as plain propagation.
enum class TransmissionDelayMode { kPerUnit, kPropagationOnly };

struct CostBreakdown {
  double it_cost = 0;
  double bandwidth_cost = 0;
  double migration_cost = 0;
  double programming_cost = 0;
  double reconfiguration_cost = 0;
  double weighted_total = 0;
};

struct DelayBreakdown {
  double migration_delay_ms = 0;
  double programming_delay_ms = 0;
  double reconfig_delay_ms = 0;
  double processing_delay_ms = 0;
  double transmission_delay_ms = 0;
  double total_ms = 0;
  bool deadline_met = false;
};

// Storage cost of every deployed instance.
double ItResourceCost(const PlacementConfiguration& config,
                      const SubstrateNetwork& net, const VnfCatalog& catalog);

// Per-slot traffic volume times per-MB link cost over every routed link of
// every chain.
double BandwidthCost(const RoutePlan& plan, const SubstrateNetwork& net,
                     const Scenario& scenario, int epoch);

// Server-to-server moves priced by footprint times the cheapest path cost
// between the two servers.
double MigrationCost(const PlacementConfiguration& now,
                     const PlacementConfiguration& prev,
                     const SubstrateNetwork& net, const VnfCatalog& catalog);

// Programming traffic times controller cost for every instance newly on a
// switch: from a server or from another switch's LM or EM. LM <-> EM on the
// same switch is free.
double ProgrammingCost(const PlacementConfiguration& now,
                       const PlacementConfiguration& prev,
                       const SubstrateNetwork& net, const VnfCatalog& catalog);

CostBreakdown StepObjective(const PlacementConfiguration& now,
                            const PlacementConfiguration& prev,
                            const RoutePlan& plan, const SubstrateNetwork& net,
                            const Scenario& scenario, int epoch,
                            const Weights& weights);

// Slowest server-to-server move among the instances serving request q;
// the same instance must serve the position in both epochs.
double MigrationDelay(const PlacementConfiguration& now,
                      const PlacementConfiguration& prev,
                      const SubstrateNetwork& net, const VnfCatalog& catalog,
                      const SfcRequest& request);

// Slowest controller push among the instances serving request q.
double ProgrammingDelay(const PlacementConfiguration& now,
                        const PlacementConfiguration& prev,
                        const SubstrateNetwork& net, const VnfCatalog& catalog,
                        const SfcRequest& request);

// Number of RDMA fetches needed to stream `footprint_mb` through an RDMA
// table of `table_mb`: the smallest k >= 1 with k * table_mb >= footprint.
int RdmaAccessCount(double footprint_mb, double table_mb);

// Per-MB processing delay of a VNF type served from a switch's external
// memory: access count times (LM unit delay + RDMA access delay).
double EmUnitDelay(const VnfType& vnf, const Switch& sw);

// Per-MB processing delay of `type` in `slot`.
double UnitProcessingDelay(const SubstrateNetwork& net, const VnfType& type,
                           const HostSlot& slot);

// Sum over chain positions of traffic volume times the host's per-MB delay.
// Throws EvaluationError if a position is unassigned.
double ProcessingDelay(const PlacementConfiguration& config,
                       const Scenario& scenario, int epoch,
                       const SfcRequest& request);

// Per-link delay summed over the chain's routed links.
double TransmissionDelay(const RoutePlan& plan, const SubstrateNetwork& net,
                         const Scenario& scenario, int epoch,
                         const SfcRequest& request,
                         TransmissionDelayMode mode = TransmissionDelayMode::kPerUnit);

// reconfig = max(migration, programming); total = reconfig + processing +
// transmission; the deadline holds only when total < deadline.
DelayBreakdown TotalDelay(const PlacementConfiguration& now,
                          const PlacementConfiguration& prev,
                          const Scenario& scenario, int epoch,
                          const SfcRequest& request,
                          TransmissionDelayMode mode = TransmissionDelayMode::kPerUnit);

}  // namespace sfcem

#endif  // SFCEM_COST_DELAY_H_
