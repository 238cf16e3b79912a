#include "sfcem/evaluation.h"

#include <set>

#include "sfcem/routing.h"

namespace sfcem {

bool StepEvaluation::storage_ok() const {
  return !report.Has(ConstraintId::kEmStorage) &&
         !report.Has(ConstraintId::kLmStorage) &&
         !report.Has(ConstraintId::kServerStorage);
}

bool StepEvaluation::processing_ok() const {
  return !report.Has(ConstraintId::kSwitchProcessing) &&
         !report.Has(ConstraintId::kServerProcessing);
}

int StepEvaluation::accepted_count() const {
  int n = 0;
  for (bool a : accepted) n += a;
  return n;
}

StepEvaluation EvaluateStep(const PlacementConfiguration& now,
                            const PlacementConfiguration& prev,
                            const Scenario& scenario, int epoch,
                            const EvalOptions& options) {
  const SubstrateNetwork& net = scenario.network;
  const std::vector<double> traffic = TrafficVector(scenario, epoch);
  StepEvaluation ev;
  ev.report = CheckAll(now, scenario, traffic);
  ev.cost = StepObjective(now, prev, now.routes, net, scenario, epoch,
                          options.weights);

  std::vector<bool> link_over(net.links().size(), false);
  for (std::size_t l = 0; l < net.links().size(); ++l) {
    link_over[l] = now.routes.link_load_mbps.size() == net.links().size() &&
                   now.routes.link_load_mbps[l] > net.links()[l].bandwidth_mbps;
  }
  const std::vector<double> load = InstanceLoads(now, scenario, traffic);

  const int nq = scenario.request_count();
  ev.delays.assign(nq, DelayBreakdown{});
  ev.accepted.assign(nq, false);
  for (const SfcRequest& q : scenario.requests) {
    if (!now.served(q.id)) continue;
    ev.delays[q.id] = TotalDelay(now, prev, scenario, epoch, q,
                                 options.transmission_mode);
    bool ok = ev.delays[q.id].deadline_met;
    for (int l : RequestLinks(now.routes, net, q.id)) ok = ok && !link_over[l];
    for (const auto& k : now.assignment[q.id]) {
      const HostSlot& slot = *now.instance_host[*k];
      ok = ok && load[*k] <= ProcessingCapacity(scenario.catalog.type_of(*k), slot);
    }
    ev.accepted[q.id] = ok;
  }
  ev.acceptance_ratio =
      nq == 0 ? 0.0 : static_cast<double>(ev.accepted_count()) / nq;
  return ev;
}

}  // namespace sfcem
