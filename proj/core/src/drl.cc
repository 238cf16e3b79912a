#include "sfcem/drl.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sfcem/cost_delay.h"
#include "sfcem/error.h"
#include "sfcem/routing.h"

namespace sfcem {
namespace {

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

using Chooser = std::function<int(int instance, const std::vector<bool>& mask)>;

Selection SelectSequential(const std::vector<std::vector<int>>& outputs,
                           bool dynamic, const PlacementConfiguration& prev,
                           const Scenario& scenario, const Chooser& choose) {
  const SubstrateNetwork& net = scenario.network;
  const SlotSpace slots(net);
  Occupancy occ = ComputeOccupancy(prev.instance_host, net, scenario.catalog);
  const int total = scenario.catalog.instance_total();
  Selection sel;
  sel.action.resize(total);
  sel.chosen.resize(total);
  sel.masks.resize(total);
  for (int k = 0; k < total; ++k) {
    std::vector<bool> mask =
        dynamic ? BuildDynamicFilter(occ, prev, scenario, k, outputs[k], slots)
                : std::vector<bool>(outputs[k].size(), true);
    if (std::find(mask.begin(), mask.end(), true) == mask.end()) {
      throw FilterError("instance " + std::to_string(k) + " has no active output");
    }
    const int pick = choose(k, mask);
    const HostSlot slot = slots.slot(outputs[k][pick]);
    if (dynamic) {
      const VnfType& type = scenario.catalog.type_of(k);
      const HostSlot& from = *prev.instance_host[k];
      occ.UsedRef(net, from) -= Occupancy::Footprint(type, from);
      occ.UsedRef(net, slot) += Occupancy::Footprint(type, slot);
    }
    sel.action[k] = slot;
    sel.chosen[k] = pick;
    sel.masks[k] = std::move(mask);
  }
  return sel;
}

int UniformActive(const std::vector<bool>& mask, Rng& rng) {
  std::vector<int> active;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) active.push_back(static_cast<int>(j));
  }
  return active[rng.Index(active.size())];
}

std::vector<bool> TargetMask(const PolicyBank& bank, const Occupancy& occ,
                             const PlacementConfiguration& config,
                             const Scenario& scenario, int k,
                             const SlotSpace& slots) {
  const auto& outputs = bank.heads[k].outputs();
  if (!UsesDynamicFilter(bank.filter_mode)) {
    return std::vector<bool>(outputs.size(), true);
  }
  return BuildDynamicFilter(occ, config, scenario, k, outputs, slots);
}

void RequireSharedInstance(std::span<const Scenario> set) {
  if (set.empty()) throw ConfigError("train_set: no scenarios");
  for (const Scenario& s : set) {
    if (!(s.network == set.front().network) || !(s.catalog == set.front().catalog) ||
        s.epochs() != set.front().epochs()) {
      throw ConfigError("train_set: scenarios must share network, catalog and epochs");
    }
  }
}

}  // namespace

std::string ToString(FilterMode mode) {
  switch (mode) {
    case FilterMode::kNone:
      return "none";
    case FilterMode::kStatic:
      return "static";
    case FilterMode::kDynamic:
      return "dynamic";
    case FilterMode::kHybrid:
      return "hybrid";
  }
  return "?";
}

FilterMode ParseFilterMode(const std::string& text) {
  if (text == "none") return FilterMode::kNone;
  if (text == "static") return FilterMode::kStatic;
  if (text == "dynamic") return FilterMode::kDynamic;
  if (text == "hybrid") return FilterMode::kHybrid;
  throw ConfigError("filter_mode: unknown value '" + text + "'");
}

int StateSize(const SubstrateNetwork& net, const VnfCatalog& catalog, int epochs) {
  const int m = net.server_count();
  const int s = net.switch_count();
  return m + 2 * s + catalog.max_instances_per_type() * catalog.type_count() +
         net.node_count() + catalog.instance_total() * (m + 2 * s) + epochs;
}

StateFeatures ExtractState(const PlacementConfiguration& config,
                           const Scenario& scenario, int epoch) {
  const SubstrateNetwork& net = scenario.network;
  const VnfCatalog& catalog = scenario.catalog;
  StateFeatures st;
  if (epoch < 0 || epoch >= scenario.epochs()) {
    throw LookupError("epoch " + std::to_string(epoch) + " outside the horizon");
  }
  st.values.reserve(StateSize(net, catalog, scenario.epochs()));
  auto& v = st.values;

  const Occupancy occ = ComputeOccupancy(config.instance_host, net, catalog);
  st.server_storage_offset = static_cast<int>(v.size());
  for (int m = 0; m < net.server_count(); ++m) {
    const double cap = net.servers()[m].storage_capacity_mb;
    v.push_back(Clamp01((cap - occ.server_mb[m]) / cap));
  }
  st.lm_storage_offset = static_cast<int>(v.size());
  for (int s = 0; s < net.switch_count(); ++s) {
    const double cap = net.switches()[s].lm_capacity_mb;
    v.push_back(Clamp01((cap - occ.lm_mb[s]) / cap));
  }
  st.em_storage_offset = static_cast<int>(v.size());
  for (int s = 0; s < net.switch_count(); ++s) {
    const double cap = net.switches()[s].em_capacity_mb;
    v.push_back(Clamp01((cap - occ.em_mb[s]) / cap));
  }

  st.instance_capacity_offset = static_cast<int>(v.size());
  const std::vector<double> load =
      InstanceLoads(config, scenario, TrafficVector(scenario, epoch));
  const int rows = catalog.max_instances_per_type();
  const int cols = catalog.type_count();
  v.resize(v.size() + static_cast<std::size_t>(rows) * cols, 0.0);
  for (int k = 0; k < catalog.instance_total(); ++k) {
    const VnfInstance& inst = catalog.instance(k);
    double value = 0;
    if (config.instance_host[k]) {
      const double cap = ProcessingCapacity(catalog.type_of(k), *config.instance_host[k]);
      value = Clamp01((cap - load[k]) / cap);
    }
    v[st.instance_capacity_offset + inst.index * cols + inst.type] = value;
  }

  st.bandwidth_offset = static_cast<int>(v.size());
  const auto& link_load = config.routes.link_load_mbps;
  for (NodeId n = 0; n < net.node_count(); ++n) {
    double cap = 0, left = 0;
    for (const auto& adj : net.adjacency(n)) {
      const double b = net.links()[adj.link].bandwidth_mbps;
      const double used =
          adj.link < static_cast<int>(link_load.size()) ? link_load[adj.link] : 0.0;
      cap += b;
      left += std::max(0.0, b - used);
    }
    v.push_back(cap > 0 ? Clamp01(left / cap) : 0.0);
  }

  st.placement_offset = static_cast<int>(v.size());
  const SlotSpace slots(net);
  v.resize(v.size() + static_cast<std::size_t>(catalog.instance_total()) * slots.size(),
           0.0);
  for (int k = 0; k < catalog.instance_total(); ++k) {
    if (!config.instance_host[k]) continue;
    v[st.placement_offset + k * slots.size() + slots.IndexOf(*config.instance_host[k])] =
        1.0;
  }

  st.epoch_offset = static_cast<int>(v.size());
  v.resize(v.size() + scenario.epochs(), 0.0);
  v[st.epoch_offset + epoch] = 1.0;
  return st;
}

StaticFilter BuildStaticFilter(const VnfCatalog& catalog, const SubstrateNetwork& net,
                               bool servers_only) {
  const SlotSpace slots(net);
  StaticFilter filter;
  filter.retained.resize(catalog.instance_total());
  for (int k = 0; k < catalog.instance_total(); ++k) {
    const VnfType& type = catalog.type_of(k);
    auto& out = filter.retained[k];
    for (int j = 0; j < slots.size(); ++j) {
      const HostSlot& slot = slots.slot(j);
      if (servers_only && slot.on_switch()) continue;
      if (Occupancy::Footprint(type, slot) < Occupancy::Capacity(net, slot)) {
        out.push_back(j);
      }
    }
    if (out.empty()) {
      throw FilterError("instance " + std::to_string(k) + " (type " +
                        std::to_string(type.id) + ") fits no host");
    }
  }
  return filter;
}

StaticFilter FullOutputs(const VnfCatalog& catalog, const SubstrateNetwork& net,
                         bool servers_only) {
  const SlotSpace slots(net);
  std::vector<int> all;
  for (int j = 0; j < slots.size(); ++j) {
    if (!servers_only || !slots.slot(j).on_switch()) all.push_back(j);
  }
  StaticFilter filter;
  filter.retained.assign(catalog.instance_total(), all);
  return filter;
}

std::vector<bool> BuildDynamicFilter(const Occupancy& occupancy,
                                     const PlacementConfiguration& prev,
                                     const Scenario& scenario, int instance,
                                     const std::vector<int>& outputs,
                                     const SlotSpace& slots) {
  const SubstrateNetwork& net = scenario.network;
  const VnfType& type = scenario.catalog.type_of(instance);
  const auto& current = prev.instance_host[instance];
  std::vector<bool> mask(outputs.size(), false);
  for (std::size_t j = 0; j < outputs.size(); ++j) {
    const HostSlot& slot = slots.slot(outputs[j]);
    if (current && slot == *current) {
      mask[j] = true;
      continue;
    }
    const double residual =
        Occupancy::Capacity(net, slot) - occupancy.Used(net, slot);
    mask[j] = residual > Occupancy::Footprint(type, slot);
  }
  return mask;
}

PolicyBank MakePolicyBank(const SubstrateNetwork& net, const VnfCatalog& catalog,
                          int epochs, FilterMode mode, bool servers_only,
                          double init_scale, uint64_t seed) {
  const StaticFilter filter = UsesStaticFilter(mode)
                                  ? BuildStaticFilter(catalog, net, servers_only)
                                  : FullOutputs(catalog, net, servers_only);
  PolicyBank bank;
  bank.filter_mode = mode;
  bank.servers_only = servers_only;
  bank.input_dim = StateSize(net, catalog, epochs);
  Rng rng(seed);
  for (const auto& outputs : filter.retained) {
    bank.heads.emplace_back(bank.input_dim, outputs, init_scale, rng);
  }
  return bank;
}

Selection SelectAction(const PolicyBank& policies, const StateFeatures& state,
                       const PlacementConfiguration& prev,
                       const Scenario& scenario, double epsilon, Rng& rng) {
  std::vector<std::vector<int>> outputs;
  for (const PolicyNet& head : policies.heads) outputs.push_back(head.outputs());
  return SelectSequential(
      outputs, UsesDynamicFilter(policies.filter_mode), prev, scenario,
      [&](int k, const std::vector<bool>& mask) {
        if (rng.Bernoulli(epsilon)) return UniformActive(mask, rng);
        const std::vector<double> p = policies.heads[k].Probabilities(state.values, mask);
        int best = -1;
        for (std::size_t j = 0; j < p.size(); ++j) {
          if (mask[j] && (best < 0 || p[j] > p[best])) best = static_cast<int>(j);
        }
        return best;
      });
}

Selection RandomAction(const PlacementConfiguration& prev, const Scenario& scenario,
                       Rng& rng) {
  const StaticFilter all = FullOutputs(scenario.catalog, scenario.network);
  return SelectSequential(all.retained, true, prev, scenario,
                          [&](int, const std::vector<bool>& mask) {
                            return UniformActive(mask, rng);
                          });
}

double RewardFromEvaluation(const StepEvaluation& eval, RewardKind kind,
                            const RewardWeights& reward_weights) {
  if (kind == RewardKind::kNegativeDelayMigration) {
    double total = eval.cost.migration_cost;
    for (const DelayBreakdown& d : eval.delays) total += d.total_ms;
    return -total;
  }
  if (!eval.storage_ok() || !eval.processing_ok()) return 0.0;
  return reward_weights.acceptance * eval.acceptance_ratio +
         reward_weights.cost / std::max(eval.cost.weighted_total, kCostFloor);
}

double ComputeReward(const PlacementConfiguration& now,
                     const PlacementConfiguration& prev, const Scenario& scenario,
                     int epoch, const Weights& weights,
                     const RewardWeights& reward_weights) {
  EvalOptions options;
  options.weights = weights;
  return RewardFromEvaluation(EvaluateStep(now, prev, scenario, epoch, options),
                              RewardKind::kAcceptanceCost, reward_weights);
}

std::string ToString(TargetTransform transform) {
  switch (transform) {
    case TargetTransform::kEpochRange: return "epoch_range";
    case TargetTransform::kSquash: return "squash";
    case TargetTransform::kRaw: return "raw";
  }
  return "epoch_range";
}

TargetTransform ParseTargetTransform(const std::string& text) {
  if (text == "epoch_range") return TargetTransform::kEpochRange;
  if (text == "squash") return TargetTransform::kSquash;
  if (text == "raw") return TargetTransform::kRaw;
  throw ConfigError("unknown target transform '" + text +
                    "' (expected epoch_range|squash|raw)");
}

double TransformReward(double reward, TargetTransform transform) {
  switch (transform) {
    case TargetTransform::kRaw: return reward;
    case TargetTransform::kSquash:
      return reward >= 0 ? reward / (1.0 + reward) : 1.0 / (1.0 - reward);
    case TargetTransform::kEpochRange: break;
  }
  throw ConfigError("epoch_range transform needs a RewardScaler");
}

double RewardScaler::Scale(int epoch, double reward) {
  if (transform_ != TargetTransform::kEpochRange) {
    return TransformReward(reward, transform_);
  }
  if (epoch < 0) throw LookupError("negative epoch for reward scaling");
  const double l = reward >= 0 ? std::log1p(reward) : -std::log1p(-reward);
  const auto t = static_cast<std::size_t>(epoch);
  if (lo_.size() <= t) {
    lo_.resize(t + 1, std::numeric_limits<double>::infinity());
    hi_.resize(t + 1, -std::numeric_limits<double>::infinity());
  }
  lo_[t] = std::min(lo_[t], l);
  hi_[t] = std::max(hi_[t], l);
  return hi_[t] > lo_[t] ? (l - lo_[t]) / (hi_[t] - lo_[t]) : 0.5;
}

double EpsilonSchedule::At(int episode, int episodes) const {
  if (episodes <= 1) return start;
  const double frac = static_cast<double>(episode) / (episodes - 1);
  if (shape == Shape::kExponential && start > 0 && end > 0) {
    return start * std::pow(end / start, frac);
  }
  return start + (end - start) * frac;
}

void TrainingConfig::Validate() const {
  if (episodes < 0) throw ConfigError("training.episodes: must be >= 0");
  if (epsilon.start < 0 || epsilon.start > 1) {
    throw ConfigError("training.epsilon_start: must lie in [0, 1]");
  }
  if (epsilon.end < 0 || epsilon.end > 1) {
    throw ConfigError("training.epsilon_end: must lie in [0, 1]");
  }
  if (!(learning_rate > 0)) throw ConfigError("training.learning_rate: must be > 0");
  if (!(discount > 0)) throw ConfigError("training.discount: must be > 0");
  if (init_scale < 0) throw ConfigError("training.init_scale: must be >= 0");
}

PlacementConfiguration Observe(const PlacementConfiguration& prev,
                               const Scenario& scenario, int epoch) {
  PlacementConfiguration obs = prev;
  obs.routes = RouteChainLinks(scenario.network, prev, scenario, epoch);
  return obs;
}

TrainingResult Train(std::span<const Scenario> train_set, const TrainingConfig& config,
                     const TrainingObserver& observer) {
  config.Validate();
  RequireSharedInstance(train_set);
  const SubstrateNetwork& net = train_set.front().network;
  const VnfCatalog& catalog = train_set.front().catalog;
  const SlotSpace slots(net);

  TrainingResult result;
  result.policies =
      MakePolicyBank(net, catalog, train_set.front().epochs(), config.filter_mode,
                     config.servers_only, config.init_scale, DeriveSeed(config.seed, 0));
  PolicyBank& bank = result.policies;
  RewardScaler scaler(config.target);
  Rng rng(DeriveSeed(config.seed, 1));

  for (int ep = 0; ep < config.episodes; ++ep) {
    const double eps = config.epsilon.At(ep, config.episodes);
    const int si = static_cast<int>(rng.Index(train_set.size()));
    const Scenario& sc = train_set[si];
    const int horizon = sc.epochs();

    PlacementConfiguration prev = sc.initial_placement;
    StateFeatures state = ExtractState(Observe(prev, sc, 0), sc, 0);
    double reward_sum = 0;
    for (int t = 0; t < horizon; ++t) {
      const Selection sel = SelectAction(bank, state, prev, sc, eps, rng);
      PlacementConfiguration next = ApplyAction(prev, sel.action, sc, t);
      const StepEvaluation ev = EvaluateStep(next, prev, sc, t, config.eval);
      const double r = RewardFromEvaluation(ev, config.reward, config.reward_weights);
      reward_sum += r;
      ++result.steps;
      if (!ev.storage_ok()) ++result.storage_violation_steps;
      if (observer) observer({ep, si, t, &sc, &prev, &next, &sel, &ev, r});

      StateFeatures next_state;
      Occupancy next_occ;
      const bool bootstrap = t + 1 < horizon;
      if (bootstrap) {
        next_state = ExtractState(Observe(next, sc, t + 1), sc, t + 1);
        next_occ = ComputeOccupancy(next.instance_host, net, catalog);
      }
      const double scaled = scaler.Scale(t, r);
      for (std::size_t k = 0; k < bank.heads.size(); ++k) {
        double target = scaled;
        if (bootstrap) {
          const std::vector<bool> mask =
              TargetMask(bank, next_occ, next, sc, static_cast<int>(k), slots);
          const std::vector<double> q = bank.heads[k].Probabilities(next_state.values, mask);
          double best = 0;
          for (std::size_t j = 0; j < q.size(); ++j) {
            if (mask[j]) best = std::max(best, q[j]);
          }
          target += config.discount * best;
        }
        bank.heads[k].TdUpdate(state.values, sel.masks[k], sel.chosen[k], target,
                               config.learning_rate);
      }
      prev = std::move(next);
      if (bootstrap) state = std::move(next_state);
    }
    result.trace.push_back({ep, horizon > 0 ? reward_sum / horizon : 0.0, eps});
  }
  return result;
}

}  // namespace sfcem
