#include "sfcem/oracle.h"

#include <cmath>
#include <sstream>

#include "sfcem/error.h"
#include "sfcem/placement.h"

namespace sfcem {
namespace {

bool PlacementFeasible(const StepEvaluation& ev) {
  return ev.storage_ok() && ev.processing_ok() &&
         !ev.report.Has(ConstraintId::kUniqueness) &&
         !ev.report.Has(ConstraintId::kAssignment);
}

struct Search {
  const Scenario& scenario;
  const EvalOptions& options;
  const SlotSpace slots;
  OracleResult best;
  std::vector<Action> hosts;
  std::vector<PlacementConfiguration> configs;

  // True when (misses, cost) cannot beat the incumbent.
  bool Dominated(int misses, double cost) const {
    if (!best.found) return false;
    if (misses != best.misses) return misses > best.misses;
    return cost >= best.objective;
  }

  void Visit(const PlacementConfiguration& prev, int epoch, int misses, double cost) {
    if (epoch == scenario.epochs()) {
      ++best.leaves_evaluated;
      if (Dominated(misses, cost)) return;
      best.found = true;
      best.misses = misses;
      best.objective = cost;
      best.hosts = hosts;
      best.configs = configs;
      return;
    }
    const int k_total = scenario.catalog.instance_total();
    std::vector<int> digits(k_total, 0);
    Action action(k_total);
    while (true) {
      for (int k = 0; k < k_total; ++k) action[k] = slots.slot(digits[k]);
      PlacementConfiguration next = ApplyAction(prev, action, scenario, epoch);
      const StepEvaluation ev = EvaluateStep(next, prev, scenario, epoch, options);
      if (PlacementFeasible(ev)) {
        const int m = misses + static_cast<int>(ev.accepted.size()) - ev.accepted_count();
        const double c = cost + ev.cost.weighted_total;
        if (!Dominated(m, c)) {
          hosts.push_back(action);
          configs.push_back(next);
          Visit(configs.back(), epoch + 1, m, c);
          hosts.pop_back();
          configs.pop_back();
        }
      }
      int pos = k_total - 1;
      while (pos >= 0 && ++digits[pos] == slots.size()) digits[pos--] = 0;
      if (pos < 0) break;
    }
  }
};

}  // namespace

double OracleCombinations(const Scenario& scenario) {
  const double slots = SlotSpace(scenario.network).size();
  return std::pow(slots, static_cast<double>(scenario.catalog.instance_total()) *
                             scenario.epochs());
}

OracleResult EnumerateOptimal(const Scenario& scenario, const EvalOptions& options,
                              double budget) {
  const double combinations = OracleCombinations(scenario);
  if (combinations > budget) {
    std::ostringstream msg;
    msg << "oracle would enumerate " << combinations
        << " host sequences, above the budget of " << budget;
    throw BudgetExceededError(msg.str(), combinations);
  }
  Search search{scenario, options, SlotSpace(scenario.network), {}, {}, {}};
  search.best.combinations = combinations;
  // Visit holds references into `configs`; it must never reallocate.
  search.configs.reserve(scenario.epochs());
  search.Visit(scenario.initial_placement, 0, 0, 0.0);
  return search.best;
}

}  // namespace sfcem
