#ifndef SFCEM_ROLLOUT_H_
#define SFCEM_ROLLOUT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfcem/configuration.h"
#include "sfcem/drl.h"
#include "sfcem/evaluation.h"
#include "sfcem/rng.h"
#include "sfcem/workload.h"

namespace sfcem {

// A policy's choice for one epoch. Without an assignment the previous
// request-to-instance assignment is carried over.
struct Decision {
  Action hosts;
  std::optional<Assignment> assignment;
  std::vector<bool> unserved;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual Decision Decide(const PlacementConfiguration& prev,
                          const Scenario& scenario, int epoch, Rng& rng) const = 0;
};

// Epsilon = 0 rollout of a trained policy bank.
class GreedyDrlPolicy : public Policy {
 public:
  GreedyDrlPolicy(PolicyBank bank, std::string name)
      : bank_(std::move(bank)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  Decision Decide(const PlacementConfiguration& prev, const Scenario& scenario,
                  int epoch, Rng& rng) const override;
  const PolicyBank& bank() const { return bank_; }

 private:
  PolicyBank bank_;
  std::string name_;
};

struct HostShares {
  double server = 0;
  double lm = 0;
  double em = 0;
};

HostShares ComputeHostShares(const PlacementConfiguration& config);

struct EpochMetrics {
  int epoch = 0;
  double acceptance_ratio = 0;
  int accepted = 0;
  CostBreakdown cost;
  HostShares shares;
  bool storage_ok = true;
  bool processing_ok = true;
  bool feasible = true;
};

struct RolloutResult {
  std::vector<PlacementConfiguration> configs;
  std::vector<StepEvaluation> evaluations;
  std::vector<EpochMetrics> metrics;

  double Objective() const;
  // Request-epochs that were not accepted.
  int Misses() const;
  bool Feasible() const;
};

// Runs the policy over every epoch from the scenario's initial placement.
RolloutResult Rollout(const Policy& policy, const Scenario& scenario,
                      const EvalOptions& options, uint64_t seed);

// Evaluation of an explicit host sequence with carried-over assignments.
RolloutResult RolloutHosts(const std::vector<Action>& hosts,
                           const Scenario& scenario, const EvalOptions& options);

}  // namespace sfcem

#endif  // SFCEM_ROLLOUT_H_
