#include "sfcem/rollout.h"

#include "sfcem/placement.h"

namespace sfcem {
namespace {

void Record(RolloutResult& out, PlacementConfiguration next,
            const PlacementConfiguration& prev, const Scenario& scenario,
            int epoch, const EvalOptions& options) {
  StepEvaluation ev = EvaluateStep(next, prev, scenario, epoch, options);
  EpochMetrics m;
  m.epoch = epoch;
  m.acceptance_ratio = ev.acceptance_ratio;
  m.accepted = ev.accepted_count();
  m.cost = ev.cost;
  m.shares = ComputeHostShares(next);
  m.storage_ok = ev.storage_ok();
  m.processing_ok = ev.processing_ok();
  m.feasible = ev.report.feasible();
  out.metrics.push_back(m);
  out.evaluations.push_back(std::move(ev));
  out.configs.push_back(std::move(next));
}

}  // namespace

Decision GreedyDrlPolicy::Decide(const PlacementConfiguration& prev,
                                 const Scenario& scenario, int epoch,
                                 Rng& rng) const {
  const StateFeatures state = ExtractState(Observe(prev, scenario, epoch), scenario, epoch);
  Decision d;
  d.hosts = SelectAction(bank_, state, prev, scenario, 0.0, rng).action;
  return d;
}

HostShares ComputeHostShares(const PlacementConfiguration& config) {
  HostShares s;
  int placed = 0;
  for (const auto& slot : config.instance_host) {
    if (!slot) continue;
    ++placed;
    switch (slot->kind) {
      case SlotKind::kServer:
        s.server += 1;
        break;
      case SlotKind::kSwitchLocal:
        s.lm += 1;
        break;
      case SlotKind::kSwitchExternal:
        s.em += 1;
        break;
    }
  }
  if (placed > 0) {
    s.server /= placed;
    s.lm /= placed;
    s.em /= placed;
  }
  return s;
}

double RolloutResult::Objective() const {
  double total = 0;
  for (const EpochMetrics& m : metrics) total += m.cost.weighted_total;
  return total;
}

int RolloutResult::Misses() const {
  int misses = 0;
  for (const StepEvaluation& ev : evaluations) {
    misses += static_cast<int>(ev.accepted.size()) - ev.accepted_count();
  }
  return misses;
}

bool RolloutResult::Feasible() const {
  for (const EpochMetrics& m : metrics) {
    if (!m.feasible) return false;
  }
  return true;
}

RolloutResult Rollout(const Policy& policy, const Scenario& scenario,
                      const EvalOptions& options, uint64_t seed) {
  Rng rng(seed);
  RolloutResult out;
  PlacementConfiguration prev = scenario.initial_placement;
  for (int t = 0; t < scenario.epochs(); ++t) {
    Decision d = policy.Decide(prev, scenario, t, rng);
    PlacementConfiguration next =
        d.assignment ? ApplyReassignment(prev, d.hosts, std::move(*d.assignment),
                                         std::move(d.unserved), scenario, t)
                     : ApplyAction(prev, d.hosts, scenario, t);
    Record(out, std::move(next), prev, scenario, t, options);
    prev = out.configs.back();
  }
  return out;
}

RolloutResult RolloutHosts(const std::vector<Action>& hosts,
                           const Scenario& scenario, const EvalOptions& options) {
  RolloutResult out;
  PlacementConfiguration prev = scenario.initial_placement;
  for (int t = 0; t < static_cast<int>(hosts.size()); ++t) {
    Record(out, ApplyAction(prev, hosts[t], scenario, t), prev, scenario, t, options);
    prev = out.configs.back();
  }
  return out;
}

}  // namespace sfcem
