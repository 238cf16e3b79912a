#ifndef SFCEM_EXPERIMENT_H_
#define SFCEM_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sfcem/baselines.h"
#include "sfcem/drl.h"
#include "sfcem/json_io.h"
#include "sfcem/network.h"
#include "sfcem/rollout.h"
#include "sfcem/workload.h"

namespace sfcem {

struct NetworkConfig {
  int switches = 10;
  int servers = 12;
  ParamRanges ranges;
};

struct DatasetConfig {
  int train = 1200;
  int test = 300;
  // Seed retries per scenario when a draw admits no feasible initial
  // placement.
  int max_attempts = 50;
};

// One JSON document with sections network, workload, training, weights,
// dataset and baselines. Missing fields keep their defaults; unknown or
// mistyped fields raise ConfigError naming "section.field".
struct ExperimentConfig {
  NetworkConfig network;
  GenParams workload;
  TrainingConfig training;
  DatasetConfig dataset;
  int server_only_episodes = 2000;
  double oracle_budget = 1e7;
};

ExperimentConfig ExperimentConfigFromJson(const Json& j);
Json ToJson(const ExperimentConfig& config);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

struct Dataset {
  std::vector<Scenario> train;
  std::vector<Scenario> test;
};

// Deterministic in (config, seed). All scenarios share one network and
// catalog.
Dataset GenerateDataset(const ExperimentConfig& config, uint64_t seed);

// Writes <out>/train/scenario_NNNNN.json, <out>/test/... and
// <out>/manifest.json with seeds, parameters and a SHA-256 digest.
std::string RunGenerate(const ExperimentConfig& config, uint64_t seed,
                        const std::filesystem::path& out);

// Scenario files of a directory in name order. A directory with a `train`
// or `test` subdirectory is read through `split`.
std::vector<Scenario> LoadScenarios(const std::filesystem::path& dir,
                                    const std::string& split);

// Trains sr-em (hybrid unless overridden) or ddqn-cm; writes
// <out>/policy.json and <out>/trace.csv. Random and lag need no training
// and raise ConfigError.
void RunTrain(const ExperimentConfig& config, uint64_t seed, PolicyKind kind,
              std::optional<FilterMode> filter_mode,
              const std::filesystem::path& scenarios,
              const std::filesystem::path& out);

std::string TraceCsv(const std::vector<TraceRow>& trace);

struct EvalRow {
  std::string policy;
  int scenario = 0;
  EpochMetrics metrics;
  bool working = false;
};

std::vector<EvalRow> EvaluatePolicy(const Policy& policy,
                                    const std::vector<Scenario>& test,
                                    const EvalOptions& options, uint64_t seed);

// Per-row CSV followed by per-policy, per-epoch mean rows (scenario "mean").
std::string MetricsCsv(const std::vector<EvalRow>& rows);

std::unique_ptr<Policy> MakePolicy(PolicyKind kind,
                                   const std::optional<PolicyBank>& bank);

// Evaluates one policy on the test split and writes a metrics CSV to `out`.
void RunEval(const ExperimentConfig& config, uint64_t seed, PolicyKind kind,
             const std::optional<std::filesystem::path>& policy_file,
             const std::filesystem::path& scenarios,
             const std::filesystem::path& out);

// Writes the optimum for one scenario file as JSON.
void RunOracle(const ExperimentConfig& config,
               const std::filesystem::path& scenario_file,
               const std::filesystem::path& out);

// Trains sr-em and ddqn-cm on the train split, evaluates all four policies
// on the test split, and writes <out>/metrics.csv and the two traces.
void RunCompare(const ExperimentConfig& config, uint64_t seed,
                const std::filesystem::path& scenarios,
                const std::filesystem::path& out);

std::string Sha256Hex(const std::string& data);

}  // namespace sfcem

#endif  // SFCEM_EXPERIMENT_H_
