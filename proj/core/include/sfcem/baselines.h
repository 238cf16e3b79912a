#ifndef SFCEM_BASELINES_H_
#define SFCEM_BASELINES_H_

#include <span>
#include <string>

#include "sfcem/drl.h"
#include "sfcem/rollout.h"

namespace sfcem {

enum class PolicyKind { kRandom, kServerOnlyDrl, kLagHeuristic, kSrEm };

// CLI names: random, ddqn-cm, lag, sr-em.
std::string ToString(PolicyKind kind);
// Accepts the CLI names and the tags random, server_only_drl,
// lag_heuristic, sr_em. Throws ConfigError otherwise.
PolicyKind ParsePolicyKind(const std::string& text);

// Uniform over slots with residual storage, per instance.
Action RandomStep(const PlacementConfiguration& prev, const Scenario& scenario,
                  Rng& rng);

class RandomPolicy : public Policy {
 public:
  std::string name() const override { return ToString(PolicyKind::kRandom); }
  Decision Decide(const PlacementConfiguration& prev, const Scenario& scenario,
                  int epoch, Rng& rng) const override;
};

// Server slots only, hybrid filtering, reward -(chain delays + migration).
TrainingConfig ServerOnlyConfig(TrainingConfig base);
TrainingResult TrainServerOnly(std::span<const Scenario> train_set,
                               const TrainingConfig& base,
                               const TrainingObserver& observer = {});

// Layered-graph heuristic: every epoch re-places all requests in id order
// on LM and server slots. For each chain position it prunes hosts whose
// processing delay exceeds deadline / chain length, that lack processing
// capacity, or that are unreachable over links with enough residual
// bandwidth, then picks the cheapest host by hosting, reconfiguration and
// bandwidth cost. Requests share an opened instance while it has spare
// capacity; a request with no feasible host is left unserved.
Decision LagStep(const PlacementConfiguration& prev, const Scenario& scenario,
                 int epoch);

class LagPolicy : public Policy {
 public:
  std::string name() const override { return ToString(PolicyKind::kLagHeuristic); }
  Decision Decide(const PlacementConfiguration& prev, const Scenario& scenario,
                  int epoch, Rng& rng) const override;
};

}  // namespace sfcem

#endif  // SFCEM_BASELINES_H_
