#include "sfcem/experiment.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "sfcem/error.h"
#include "sfcem/oracle.h"

namespace sfcem {
namespace fs = std::filesystem;
namespace {

// Reads the fields of one config section and rejects unknown keys.
class Section {
 public:
  Section(const Json& root, std::string name) : name_(std::move(name)) {
    if (!root.contains(name_)) return;
    j_ = root.at(name_);
    if (!j_.is_object()) throw ConfigError(name_ + ": expected an object");
  }

  void Int(const char* key, int& out) {
    if (const Json* v = Take(key)) {
      if (!v->is_number_integer()) Fail(key, "expected an integer");
      out = v->get<int>();
    }
  }
  void Uint(const char* key, uint64_t& out) {
    if (const Json* v = Take(key)) {
      if (!v->is_number_unsigned()) Fail(key, "expected a non-negative integer");
      out = v->get<uint64_t>();
    }
  }
  void Num(const char* key, double& out) {
    if (const Json* v = Take(key)) {
      if (!v->is_number()) Fail(key, "expected a number");
      out = v->get<double>();
    }
  }
  void Bool(const char* key, bool& out) {
    if (const Json* v = Take(key)) {
      if (!v->is_boolean()) Fail(key, "expected true or false");
      out = v->get<bool>();
    }
  }
  void Str(const char* key, std::string& out) {
    if (const Json* v = Take(key)) {
      if (!v->is_string()) Fail(key, "expected a string");
      out = v->get<std::string>();
    }
  }
  // [min, max]
  void RangeOf(const char* key, Range& out) {
    if (const Json* v = Take(key)) {
      if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() ||
          !(*v)[1].is_number()) {
        Fail(key, "expected [min, max]");
      }
      out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    }
  }
  void Finish() const {
    if (j_.is_null()) return;
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) Fail(key.c_str(), "unknown field");
    }
  }
  [[noreturn]] void Fail(const char* key, const std::string& why) const {
    throw ConfigError(name_ + "." + key + ": " + why);
  }

 private:
  const Json* Take(const char* key) {
    seen_.insert(key);
    if (j_.is_null() || !j_.contains(key)) return nullptr;
    return &j_.at(key);
  }

  std::string name_;
  Json j_;
  std::set<std::string> seen_;
};

Json RangeJson(const Range& r) { return Json::array({r.min, r.max}); }

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string ScenarioName(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scenario_%05d.json", i);
  return buf;
}

Scenario GenerateWithRetries(const SubstrateNetwork& net, const VnfCatalog& catalog,
                             const ExperimentConfig& config, uint64_t seed) {
  std::string last;
  for (int attempt = 0; attempt < std::max(1, config.dataset.max_attempts); ++attempt) {
    try {
      return GenerateScenario(net, catalog, config.workload, DeriveSeed(seed, attempt));
    } catch (const GenerationError& e) {
      last = e.what();
    }
  }
  throw GenerationError("no feasible scenario after " +
                        std::to_string(config.dataset.max_attempts) +
                        " attempts: " + last);
}

uint64_t ScenarioSeed(uint64_t seed, const std::string& split, int i) {
  return DeriveSeed(DeriveSeed(seed, split == "train" ? 10 : 11), i);
}

PolicyBank LoadPolicyFile(const fs::path& path) {
  return PolicyBankFromJson(ReadJsonFile(path));
}

EvalOptions OptionsOf(const ExperimentConfig& config) { return config.training.eval; }

}  // namespace

ExperimentConfig ExperimentConfigFromJson(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::set<std::string> kSections = {"network", "workload", "training",
                                                  "weights", "dataset", "baselines",
                                                  "oracle"};
  for (const auto& [key, value] : j.items()) {
    if (!kSections.count(key)) throw ConfigError(key + ": unknown section");
  }
  ExperimentConfig c;

  Section net(j, "network");
  ParamRanges& r = c.network.ranges;
  net.Int("switches", c.network.switches);
  net.Int("servers", c.network.servers);
  net.Int("core_switches", r.core_switches);
  net.RangeOf("server_storage_gb", r.server_storage_gb);
  net.RangeOf("server_cost_per_gb", r.server_cost_per_gb);
  net.RangeOf("server_unit_delay_ms_per_mb", r.server_unit_delay_ms_per_mb);
  net.RangeOf("lm_capacity_mb", r.lm_capacity_mb);
  net.RangeOf("em_capacity_mb", r.em_capacity_mb);
  net.Bool("rdma_table_equals_lm", r.rdma_table_equals_lm);
  net.RangeOf("rdma_table_mb", r.rdma_table_mb);
  net.RangeOf("lm_cost_per_mb", r.lm_cost_per_mb);
  net.RangeOf("em_cost_per_mb", r.em_cost_per_mb);
  net.RangeOf("switch_unit_delay_ms_per_mb", r.switch_unit_delay_ms_per_mb);
  net.RangeOf("rdma_delay_ns", r.rdma_delay_ns);
  net.RangeOf("controller_bandwidth_gbps", r.controller_bandwidth_gbps);
  net.RangeOf("controller_cost_per_gb", r.controller_cost_per_gb);
  net.RangeOf("link_bandwidth_gbps", r.link_bandwidth_gbps);
  net.RangeOf("link_cost_per_gb", r.link_cost_per_gb);
  net.RangeOf("link_delay_ms", r.link_delay_ms);
  net.Finish();

  Section wl(j, "workload");
  GenParams& g = c.workload;
  wl.Int("requests", g.request_count);
  wl.Int("vnf_types", g.vnf_types);
  wl.Int("instances_per_type", g.instances_per_type);
  wl.Int("max_chain_length", g.max_chain_length);
  wl.RangeOf("footprint_mb", g.footprint_mb);
  wl.RangeOf("server_capacity_mbps", g.server_capacity_mbps);
  wl.RangeOf("switch_capacity_gbps", g.switch_capacity_gbps);
  wl.Int("epochs", g.schedule.epochs);
  wl.Int("working_epochs", g.schedule.working_epochs);
  wl.RangeOf("working_traffic_mbps", g.working_traffic_mbps);
  wl.RangeOf("nonworking_traffic_mbps", g.nonworking_traffic_mbps);
  wl.RangeOf("working_deadline_ms", g.working_deadline_ms);
  wl.RangeOf("nonworking_deadline_ms", g.nonworking_deadline_ms);
  wl.Finish();
  r.vnf_types = g.vnf_types;

  Section tr(j, "training");
  TrainingConfig& t = c.training;
  std::string shape = "linear", filter = ToString(t.filter_mode), transmission = "per_unit";
  std::string target = ToString(t.target);
  tr.Int("episodes", t.episodes);
  tr.Num("epsilon_start", t.epsilon.start);
  tr.Num("epsilon_end", t.epsilon.end);
  tr.Str("epsilon_shape", shape);
  tr.Num("learning_rate", t.learning_rate);
  tr.Num("discount", t.discount);
  tr.Num("reward_acceptance", t.reward_weights.acceptance);
  tr.Num("reward_cost", t.reward_weights.cost);
  tr.Str("filter_mode", filter);
  tr.Num("init_scale", t.init_scale);
  tr.Str("transmission_delay", transmission);
  tr.Str("target_transform", target);
  tr.Finish();
  if (shape == "linear") {
    t.epsilon.shape = EpsilonSchedule::Shape::kLinear;
  } else if (shape == "exponential") {
    t.epsilon.shape = EpsilonSchedule::Shape::kExponential;
  } else {
    tr.Fail("epsilon_shape", "expected linear or exponential");
  }
  try {
    t.filter_mode = ParseFilterMode(filter);
  } catch (const ConfigError&) {
    tr.Fail("filter_mode", "expected none, static, dynamic or hybrid");
  }
  if (transmission == "per_unit") {
    t.eval.transmission_mode = TransmissionDelayMode::kPerUnit;
  } else if (transmission == "propagation_only") {
    t.eval.transmission_mode = TransmissionDelayMode::kPropagationOnly;
  } else {
    tr.Fail("transmission_delay", "expected per_unit or propagation_only");
  }
  try {
    t.target = ParseTargetTransform(target);
  } catch (const ConfigError&) {
    tr.Fail("target_transform", "expected epoch_range, squash or raw");
  }

  Section w(j, "weights");
  w.Num("alpha", t.eval.weights.alpha);
  w.Num("beta", t.eval.weights.beta);
  w.Finish();

  Section ds(j, "dataset");
  ds.Int("train", c.dataset.train);
  ds.Int("test", c.dataset.test);
  ds.Int("max_attempts", c.dataset.max_attempts);
  ds.Finish();

  Section bl(j, "baselines");
  bl.Int("server_only_episodes", c.server_only_episodes);
  bl.Finish();

  Section orc(j, "oracle");
  orc.Num("budget", c.oracle_budget);
  orc.Finish();

  if (c.network.switches < 2) throw ConfigError("network.switches: must be >= 2");
  if (c.network.servers < 1) throw ConfigError("network.servers: must be >= 1");
  if (c.dataset.train < 0) throw ConfigError("dataset.train: must be >= 0");
  if (c.dataset.test < 0) throw ConfigError("dataset.test: must be >= 0");
  if (c.server_only_episodes < 0) {
    throw ConfigError("baselines.server_only_episodes: must be >= 0");
  }
  try {
    c.network.ranges.Validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("network.") + e.what());
  }
  try {
    c.workload.Validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("workload.") + e.what());
  }
  c.training.Validate();
  return c;
}

Json ToJson(const ExperimentConfig& c) {
  const ParamRanges& r = c.network.ranges;
  const GenParams& g = c.workload;
  const TrainingConfig& t = c.training;
  return {
      {"network",
       {{"switches", c.network.switches},
        {"servers", c.network.servers},
        {"core_switches", r.core_switches},
        {"server_storage_gb", RangeJson(r.server_storage_gb)},
        {"server_cost_per_gb", RangeJson(r.server_cost_per_gb)},
        {"server_unit_delay_ms_per_mb", RangeJson(r.server_unit_delay_ms_per_mb)},
        {"lm_capacity_mb", RangeJson(r.lm_capacity_mb)},
        {"em_capacity_mb", RangeJson(r.em_capacity_mb)},
        {"rdma_table_equals_lm", r.rdma_table_equals_lm},
        {"rdma_table_mb", RangeJson(r.rdma_table_mb)},
        {"lm_cost_per_mb", RangeJson(r.lm_cost_per_mb)},
        {"em_cost_per_mb", RangeJson(r.em_cost_per_mb)},
        {"switch_unit_delay_ms_per_mb", RangeJson(r.switch_unit_delay_ms_per_mb)},
        {"rdma_delay_ns", RangeJson(r.rdma_delay_ns)},
        {"controller_bandwidth_gbps", RangeJson(r.controller_bandwidth_gbps)},
        {"controller_cost_per_gb", RangeJson(r.controller_cost_per_gb)},
        {"link_bandwidth_gbps", RangeJson(r.link_bandwidth_gbps)},
        {"link_cost_per_gb", RangeJson(r.link_cost_per_gb)},
        {"link_delay_ms", RangeJson(r.link_delay_ms)}}},
      {"workload",
       {{"requests", g.request_count},
        {"vnf_types", g.vnf_types},
        {"instances_per_type", g.instances_per_type},
        {"max_chain_length", g.max_chain_length},
        {"footprint_mb", RangeJson(g.footprint_mb)},
        {"server_capacity_mbps", RangeJson(g.server_capacity_mbps)},
        {"switch_capacity_gbps", RangeJson(g.switch_capacity_gbps)},
        {"epochs", g.schedule.epochs},
        {"working_epochs", g.schedule.working_epochs},
        {"working_traffic_mbps", RangeJson(g.working_traffic_mbps)},
        {"nonworking_traffic_mbps", RangeJson(g.nonworking_traffic_mbps)},
        {"working_deadline_ms", RangeJson(g.working_deadline_ms)},
        {"nonworking_deadline_ms", RangeJson(g.nonworking_deadline_ms)}}},
      {"training",
       {{"episodes", t.episodes},
        {"epsilon_start", t.epsilon.start},
        {"epsilon_end", t.epsilon.end},
        {"epsilon_shape", t.epsilon.shape == EpsilonSchedule::Shape::kLinear
                              ? "linear"
                              : "exponential"},
        {"learning_rate", t.learning_rate},
        {"discount", t.discount},
        {"reward_acceptance", t.reward_weights.acceptance},
        {"reward_cost", t.reward_weights.cost},
        {"filter_mode", ToString(t.filter_mode)},
        {"init_scale", t.init_scale},
        {"transmission_delay",
         t.eval.transmission_mode == TransmissionDelayMode::kPerUnit
             ? "per_unit"
             : "propagation_only"},
        {"target_transform", ToString(t.target)}}},
      {"weights", {{"alpha", t.eval.weights.alpha}, {"beta", t.eval.weights.beta}}},
      {"dataset",
       {{"train", c.dataset.train},
        {"test", c.dataset.test},
        {"max_attempts", c.dataset.max_attempts}}},
      {"baselines", {{"server_only_episodes", c.server_only_episodes}}},
      {"oracle", {{"budget", c.oracle_budget}}}};
}

ExperimentConfig LoadExperimentConfig(const fs::path& path) {
  Json j;
  try {
    j = ReadJsonFile(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return ExperimentConfigFromJson(j);
}

Dataset GenerateDataset(const ExperimentConfig& config, uint64_t seed) {
  const SubstrateNetwork net = BuildFatTree(config.network.switches,
                                            config.network.servers,
                                            config.network.ranges, DeriveSeed(seed, 1));
  const VnfCatalog catalog = GenerateCatalog(config.workload, DeriveSeed(seed, 2));
  Dataset d;
  for (int i = 0; i < config.dataset.train; ++i) {
    d.train.push_back(
        GenerateWithRetries(net, catalog, config, ScenarioSeed(seed, "train", i)));
  }
  for (int i = 0; i < config.dataset.test; ++i) {
    d.test.push_back(
        GenerateWithRetries(net, catalog, config, ScenarioSeed(seed, "test", i)));
  }
  return d;
}

std::string Sha256Hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string RunGenerate(const ExperimentConfig& config, uint64_t seed,
                        const fs::path& out) {
  const Dataset d = GenerateDataset(config, seed);
  Json files = Json::array();
  std::string all_digests;
  auto emit = [&](const std::vector<Scenario>& set, const std::string& split) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      const std::string name = ScenarioName(static_cast<int>(i));
      const std::string text = DumpJson(ToJson(set[i]));
      const std::string digest = Sha256Hex(text);
      WriteFileAtomic(out / split / name, text);
      files.push_back({{"split", split},
                       {"file", split + "/" + name},
                       {"sha256", digest}});
      all_digests += digest;
    }
  };
  emit(d.train, "train");
  emit(d.test, "test");
  Json manifest = {{"seed", seed},
                   {"config", ToJson(config)},
                   {"train", d.train.size()},
                   {"test", d.test.size()},
                   {"files", files}};
  const std::string digest = Sha256Hex(manifest.dump() + all_digests);
  manifest["digest"] = digest;
  WriteFileAtomic(out / "manifest.json", DumpJson(manifest));
  return digest;
}

std::vector<Scenario> LoadScenarios(const fs::path& dir, const std::string& split) {
  fs::path base = dir;
  if (fs::is_directory(dir / split)) base = dir / split;
  if (!fs::is_directory(base)) throw IoError("not a directory: " + base.string());
  std::vector<fs::path> names;
  for (const auto& entry : fs::directory_iterator(base)) {
    const fs::path& p = entry.path();
    if (entry.is_regular_file() && p.extension() == ".json" &&
        p.filename() != "manifest.json") {
      names.push_back(p);
    }
  }
  std::sort(names.begin(), names.end());
  std::vector<Scenario> out;
  for (const fs::path& p : names) {
    try {
      out.push_back(ScenarioFromJson(ReadJsonFile(p)));
    } catch (const IoError& e) {
      throw IoError(p.string() + ": " + e.what());
    }
  }
  if (out.empty()) throw IoError("no scenario files in " + base.string());
  return out;
}

std::string TraceCsv(const std::vector<TraceRow>& trace) {
  std::string s = "episode,mean_reward,epsilon\n";
  for (const TraceRow& r : trace) {
    s += std::to_string(r.episode) + "," + Fmt(r.mean_reward) + "," + Fmt(r.epsilon) + "\n";
  }
  return s;
}

void RunTrain(const ExperimentConfig& config, uint64_t seed, PolicyKind kind,
              std::optional<FilterMode> filter_mode, const fs::path& scenarios,
              const fs::path& out) {
  if (kind == PolicyKind::kRandom || kind == PolicyKind::kLagHeuristic) {
    throw ConfigError("policy: " + ToString(kind) + " has no training step");
  }
  const std::vector<Scenario> train = LoadScenarios(scenarios, "train");
  TrainingConfig tc = config.training;
  tc.seed = seed;
  if (filter_mode) tc.filter_mode = *filter_mode;
  TrainingResult result;
  if (kind == PolicyKind::kServerOnlyDrl) {
    tc.episodes = config.server_only_episodes;
    result = TrainServerOnly(train, tc);
  } else {
    result = Train(train, tc);
  }
  WriteFileAtomic(out / "policy.json", DumpJson(ToJson(result.policies)));
  WriteFileAtomic(out / "trace.csv", TraceCsv(result.trace));
}

std::vector<EvalRow> EvaluatePolicy(const Policy& policy,
                                    const std::vector<Scenario>& test,
                                    const EvalOptions& options, uint64_t seed) {
  std::vector<EvalRow> rows;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const RolloutResult r = Rollout(policy, test[i], options, DeriveSeed(seed, i));
    for (const EpochMetrics& m : r.metrics) {
      rows.push_back({policy.name(), static_cast<int>(i), m,
                      test[i].schedule.IsWorking(m.epoch)});
    }
  }
  return rows;
}

std::string MetricsCsv(const std::vector<EvalRow>& rows) {
  std::string s =
      "policy,scenario,epoch,working,acceptance_ratio,it_cost,bandwidth_cost,"
      "migration_cost,programming_cost,reconfig_cost,total_cost,server_share,"
      "lm_share,em_share\n";
  auto line = [](const std::string& policy, const std::string& scenario, int epoch,
                 bool working, const std::vector<double>& v) {
    std::string out = policy + "," + scenario + "," + std::to_string(epoch) + "," +
                      (working ? "1" : "0");
    for (double x : v) out += "," + Fmt(x);
    return out + "\n";
  };
  auto values = [](const EpochMetrics& m) {
    return std::vector<double>{m.acceptance_ratio,     m.cost.it_cost,
                               m.cost.bandwidth_cost,  m.cost.migration_cost,
                               m.cost.programming_cost, m.cost.reconfiguration_cost,
                               m.cost.weighted_total,  m.shares.server,
                               m.shares.lm,            m.shares.em};
  };
  // (policy first-seen order, epoch) -> sums
  std::vector<std::string> order;
  std::map<std::pair<std::string, int>, std::pair<std::vector<double>, int>> sums;
  std::map<std::pair<std::string, int>, bool> working;
  for (const EvalRow& r : rows) {
    s += line(r.policy, std::to_string(r.scenario), r.metrics.epoch, r.working,
              values(r.metrics));
    if (std::find(order.begin(), order.end(), r.policy) == order.end()) {
      order.push_back(r.policy);
    }
    auto& [acc, n] = sums[{r.policy, r.metrics.epoch}];
    const std::vector<double> v = values(r.metrics);
    if (acc.empty()) acc.assign(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
    ++n;
    working[{r.policy, r.metrics.epoch}] = r.working;
  }
  for (const std::string& p : order) {
    for (const auto& [key, entry] : sums) {
      if (key.first != p) continue;
      std::vector<double> mean = entry.first;
      for (double& x : mean) x /= entry.second;
      s += line(p, "mean", key.second, working[key], mean);
    }
  }
  return s;
}

std::unique_ptr<Policy> MakePolicy(PolicyKind kind,
                                   const std::optional<PolicyBank>& bank) {
  switch (kind) {
    case PolicyKind::kRandom:
      return std::make_unique<RandomPolicy>();
    case PolicyKind::kLagHeuristic:
      return std::make_unique<LagPolicy>();
    case PolicyKind::kServerOnlyDrl:
    case PolicyKind::kSrEm:
      if (!bank) throw ConfigError("policy-file: " + ToString(kind) + " needs weights");
      return std::make_unique<GreedyDrlPolicy>(*bank, ToString(kind));
  }
  throw ConfigError("policy: unsupported");
}

void RunEval(const ExperimentConfig& config, uint64_t seed, PolicyKind kind,
             const std::optional<fs::path>& policy_file, const fs::path& scenarios,
             const fs::path& out) {
  std::optional<PolicyBank> bank;
  if (policy_file) bank = LoadPolicyFile(*policy_file);
  const auto policy = MakePolicy(kind, bank);
  const std::vector<Scenario> test = LoadScenarios(scenarios, "test");
  WriteFileAtomic(out, MetricsCsv(EvaluatePolicy(*policy, test, OptionsOf(config), seed)));
}

void RunOracle(const ExperimentConfig& config, const fs::path& scenario_file,
               const fs::path& out) {
  const Scenario scenario = ScenarioFromJson(ReadJsonFile(scenario_file));
  const OracleResult result =
      EnumerateOptimal(scenario, OptionsOf(config), config.oracle_budget);
  WriteFileAtomic(out, DumpJson(ToJson(result)));
}

void RunCompare(const ExperimentConfig& config, uint64_t seed, const fs::path& scenarios,
                const fs::path& out) {
  const std::vector<Scenario> train = LoadScenarios(scenarios, "train");
  const std::vector<Scenario> test = LoadScenarios(scenarios, "test");
  TrainingConfig tc = config.training;
  tc.seed = DeriveSeed(seed, 1);
  const TrainingResult srem = Train(train, tc);
  TrainingConfig so = tc;
  so.seed = DeriveSeed(seed, 2);
  so.episodes = config.server_only_episodes;
  const TrainingResult server_only = TrainServerOnly(train, so);
  WriteFileAtomic(out / "trace_sr-em.csv", TraceCsv(srem.trace));
  WriteFileAtomic(out / "trace_ddqn-cm.csv", TraceCsv(server_only.trace));

  std::vector<EvalRow> rows;
  const EvalOptions options = OptionsOf(config);
  const uint64_t eval_seed = DeriveSeed(seed, 3);
  for (PolicyKind kind : {PolicyKind::kSrEm, PolicyKind::kLagHeuristic,
                          PolicyKind::kServerOnlyDrl, PolicyKind::kRandom}) {
    std::optional<PolicyBank> bank;
    if (kind == PolicyKind::kSrEm) bank = srem.policies;
    if (kind == PolicyKind::kServerOnlyDrl) bank = server_only.policies;
    const auto policy = MakePolicy(kind, bank);
    const std::vector<EvalRow> part = EvaluatePolicy(*policy, test, options, eval_seed);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  WriteFileAtomic(out / "metrics.csv", MetricsCsv(rows));
}

}  // namespace sfcem
