#ifndef SFCEM_ORACLE_H_
#define SFCEM_ORACLE_H_

#include <cstdint>
#include <vector>

#include "sfcem/configuration.h"
#include "sfcem/evaluation.h"
#include "sfcem/workload.h"

namespace sfcem {

inline constexpr double kDefaultOracleBudget = 1e7;

struct OracleResult {
  bool found = false;
  std::vector<Action> hosts;
  std::vector<PlacementConfiguration> configs;
  double objective = 0;
  // Request-epochs not accepted along the best sequence.
  int misses = 0;
  double combinations = 0;
  int64_t leaves_evaluated = 0;
};

// Number of host sequences: slots^(instances * epochs).
double OracleCombinations(const Scenario& scenario);

// Exhaustive search over per-epoch host assignments with carried-over
// request assignments and the shared router. Sequences breaking storage,
// uniqueness, assignment or processing constraints in any epoch are
// discarded. The remaining ones are ranked by missed request-epochs, then
// by summed weighted objective; ties keep the first in label order.
// Throws BudgetExceededError when the combination count exceeds `budget`.
OracleResult EnumerateOptimal(const Scenario& scenario, const EvalOptions& options,
                              double budget = kDefaultOracleBudget);

}  // namespace sfcem

#endif  // SFCEM_ORACLE_H_
