#ifndef SFCEM_DRL_H_
#define SFCEM_DRL_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sfcem/configuration.h"
#include "sfcem/evaluation.h"
#include "sfcem/placement.h"
#include "sfcem/policy_net.h"
#include "sfcem/rng.h"
#include "sfcem/workload.h"

namespace sfcem {

enum class FilterMode { kNone, kStatic, kDynamic, kHybrid };

std::string ToString(FilterMode mode);
// Accepts none|static|dynamic|hybrid; throws ConfigError otherwise.
FilterMode ParseFilterMode(const std::string& text);

inline bool UsesStaticFilter(FilterMode m) {
  return m == FilterMode::kStatic || m == FilterMode::kHybrid;
}
inline bool UsesDynamicFilter(FilterMode m) {
  return m == FilterMode::kDynamic || m == FilterMode::kHybrid;
}

// Observation fed to every policy network, each entry scaled to [0, 1] by
// its capacity:
//   residual storage per server, per LM, per EM;
//   residual processing capacity, rows = instance index, cols = type;
//   residual bandwidth summed over each node's adjacent links;
//   one-hot current placement, instance-major over slot labels;
//   one-hot decision epoch.
struct StateFeatures {
  std::vector<double> values;
  int server_storage_offset = 0;
  int lm_storage_offset = 0;
  int em_storage_offset = 0;
  int instance_capacity_offset = 0;
  int bandwidth_offset = 0;
  int placement_offset = 0;
  int epoch_offset = 0;

  int size() const { return static_cast<int>(values.size()); }
};

int StateSize(const SubstrateNetwork& net, const VnfCatalog& catalog, int epochs);

// `config.routes` must be routed for `epoch`.
StateFeatures ExtractState(const PlacementConfiguration& config,
                           const Scenario& scenario, int epoch);

// Per-instance retained output labels (slot indices in label order).
struct StaticFilter {
  std::vector<std::vector<int>> retained;
};

// Keeps a server iff footprint < capacity, an LM iff switch footprint < LM
// capacity, an EM iff switch footprint < EM capacity. With servers_only,
// switch slots are dropped. Throws FilterError for an instance that keeps
// no output.
StaticFilter BuildStaticFilter(const VnfCatalog& catalog,
                               const SubstrateNetwork& net,
                               bool servers_only = false);

// Every slot (or every server slot) for every instance.
StaticFilter FullOutputs(const VnfCatalog& catalog, const SubstrateNetwork& net,
                         bool servers_only = false);

// Active mask over `outputs` for one instance: its current slot always;
// any other slot iff capacity - occupancy > footprint.
std::vector<bool> BuildDynamicFilter(const Occupancy& occupancy,
                                     const PlacementConfiguration& prev,
                                     const Scenario& scenario, int instance,
                                     const std::vector<int>& outputs,
                                     const SlotSpace& slots);

struct PolicyBank {
  FilterMode filter_mode = FilterMode::kHybrid;
  bool servers_only = false;
  int input_dim = 0;
  std::vector<PolicyNet> heads;

  bool operator==(const PolicyBank&) const = default;
};

PolicyBank MakePolicyBank(const SubstrateNetwork& net, const VnfCatalog& catalog,
                          int epochs, FilterMode mode, bool servers_only,
                          double init_scale, uint64_t seed);

struct Selection {
  Action action;
  // Per instance: chosen output position and the mask it was chosen under.
  std::vector<int> chosen;
  std::vector<std::vector<bool>> masks;
};

// Per-instance epsilon-greedy choice. With dynamic filtering, masks are
// built instance by instance against the occupancy left by the instances
// already decided, so the joint action never overfills a slot.
Selection SelectAction(const PolicyBank& policies, const StateFeatures& state,
                       const PlacementConfiguration& prev,
                       const Scenario& scenario, double epsilon, Rng& rng);

// Uniformly random active slot per instance under the same sequential
// dynamic masks.
Selection RandomAction(const PlacementConfiguration& prev,
                       const Scenario& scenario, Rng& rng);

struct RewardWeights {
  double acceptance = 0.8;
  double cost = 0.2;
  bool operator==(const RewardWeights&) const = default;
};

enum class RewardKind {
  // 0 on storage or processing violations, else
  // acceptance * acr + cost / max(weighted_total, kCostFloor).
  kAcceptanceCost,
  // -(sum of served chains' delay + migration cost).
  kNegativeDelayMigration,
};

inline constexpr double kCostFloor = 1e-6;

double RewardFromEvaluation(const StepEvaluation& eval, RewardKind kind,
                            const RewardWeights& reward_weights);

double ComputeReward(const PlacementConfiguration& now,
                     const PlacementConfiguration& prev, const Scenario& scenario,
                     int epoch, const Weights& weights,
                     const RewardWeights& reward_weights);

// How a step reward enters the TD target, which is compared against a
// softmax output in [0, 1].
//   kEpochRange: signed log1p of the reward, min-max scaled by the range
//     seen so far at the same epoch index (0.5 while that range is empty).
//   kSquash: r / (1 + r) for r >= 0, 1 / (1 + |r|) for r < 0.
//   kRaw: the reward as is.
enum class TargetTransform { kEpochRange, kSquash, kRaw };

std::string ToString(TargetTransform transform);
// Accepts epoch_range|squash|raw; throws ConfigError otherwise.
TargetTransform ParseTargetTransform(const std::string& text);

// Stateless transforms only (kSquash, kRaw); kEpochRange needs a
// RewardScaler.
double TransformReward(double reward, TargetTransform transform);

class RewardScaler {
 public:
  explicit RewardScaler(TargetTransform transform) : transform_(transform) {}

  // Records `reward` for `epoch` and returns its transformed value.
  double Scale(int epoch, double reward);

 private:
  TargetTransform transform_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

struct EpsilonSchedule {
  enum class Shape { kLinear, kExponential };
  double start = 1.0;
  double end = 0.02;
  Shape shape = Shape::kLinear;

  double At(int episode, int episodes) const;
  bool operator==(const EpsilonSchedule&) const = default;
};

struct TrainingConfig {
  int episodes = 2000;
  EpsilonSchedule epsilon;
  double learning_rate = 0.2;
  double discount = 0.3;
  RewardWeights reward_weights;
  EvalOptions eval;
  FilterMode filter_mode = FilterMode::kHybrid;
  bool servers_only = false;
  RewardKind reward = RewardKind::kAcceptanceCost;
  double init_scale = 0.01;
  TargetTransform target = TargetTransform::kEpochRange;
  uint64_t seed = 1;

  void Validate() const;
};

struct TraceRow {
  int episode = 0;
  double mean_reward = 0;
  double epsilon = 0;
};

// One simulated step during training, for observers.
struct TrainingStep {
  int episode;
  int scenario_index;
  int epoch;
  const Scenario* scenario;
  const PlacementConfiguration* prev;
  const PlacementConfiguration* next;
  const Selection* selection;
  const StepEvaluation* evaluation;
  double reward;
};

using TrainingObserver = std::function<void(const TrainingStep&)>;

struct TrainingResult {
  PolicyBank policies;
  std::vector<TraceRow> trace;
  long storage_violation_steps = 0;
  long steps = 0;
};

// Episodes pick a random training scenario and roll every epoch from its
// initial placement: observe, select, apply, route, reward, then a TD
// update of every head toward r + discount * max active Q(s').
// All scenarios must share one network, catalog and epoch count.
TrainingResult Train(std::span<const Scenario> train_set,
                     const TrainingConfig& config,
                     const TrainingObserver& observer = {});

// Observation for a decision at `epoch`: the previous hosts and
// assignments re-routed under this epoch's traffic.
PlacementConfiguration Observe(const PlacementConfiguration& prev,
                               const Scenario& scenario, int epoch);

}  // namespace sfcem

#endif  // SFCEM_DRL_H_
