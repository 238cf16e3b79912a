#ifndef SFCEM_EVALUATION_H_
#define SFCEM_EVALUATION_H_

#include <vector>

#include "sfcem/configuration.h"
#include "sfcem/cost_delay.h"
#include "sfcem/placement.h"
#include "sfcem/workload.h"

namespace sfcem {

struct EvalOptions {
  Weights weights;
  TransmissionDelayMode transmission_mode = TransmissionDelayMode::kPerUnit;
};

// Everything known about one reconfiguration step.
struct StepEvaluation {
  CostBreakdown cost;
  // Per request; all-zero for unserved requests.
  std::vector<DelayBreakdown> delays;
  // Served, deadline met, every routed link and every serving instance
  // within capacity.
  std::vector<bool> accepted;
  double acceptance_ratio = 0;
  ConstraintReport report;

  bool storage_ok() const;
  bool processing_ok() const;
  int accepted_count() const;
};

StepEvaluation EvaluateStep(const PlacementConfiguration& now,
                            const PlacementConfiguration& prev,
                            const Scenario& scenario, int epoch,
                            const EvalOptions& options);

}  // namespace sfcem

#endif  // SFCEM_EVALUATION_H_
