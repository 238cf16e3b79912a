#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "sfcem/error.h"
#include "sfcem/experiment.h"
#include "sfcem/json_io.h"

namespace {

namespace fs = std::filesystem;

void PrintError(const std::string& type, const std::string& message) {
  const sfcem::Json j = {{"error", {{"type", type}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
}

sfcem::ExperimentConfig LoadConfig(const std::string& path) {
  if (path.empty()) return sfcem::ExperimentConfig{};
  return sfcem::LoadExperimentConfig(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFC reconfiguration simulator"};
  app.require_subcommand(1);

  std::string config_path;
  uint64_t seed = 1;
  std::string out;
  std::string scenarios;
  std::string policy = "sr-em";
  std::string filter_mode;
  std::string policy_file;
  std::string scenario_file;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment config JSON")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Base seed");
    sub->add_option("--out", out, "Output path")->required();
  };

  CLI::App* gen = app.add_subcommand("generate", "Generate train/test scenarios");
  common(gen);

  CLI::App* train = app.add_subcommand("train", "Train a DRL policy");
  common(train);
  train->add_option("--scenarios", scenarios, "Scenario directory")->required();
  train->add_option("--policy", policy, "sr-em or ddqn-cm");
  train->add_option("--filter-mode", filter_mode, "none|static|dynamic|hybrid");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a policy on the test split");
  common(eval);
  eval->add_option("--scenarios", scenarios, "Scenario directory")->required();
  eval->add_option("--policy", policy, "random|ddqn-cm|lag|sr-em");
  eval->add_option("--policy-file", policy_file, "Trained weights")
      ->check(CLI::ExistingFile);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum of one scenario");
  common(oracle);
  oracle->add_option("--scenario", scenario_file, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* compare = app.add_subcommand("compare", "Train and evaluate all policies");
  common(compare);
  compare->add_option("--scenarios", scenarios, "Scenario directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("usage", e.what());
    return 2;
  }

  try {
    const sfcem::ExperimentConfig config = LoadConfig(config_path);
    if (*gen) {
      const std::string digest = sfcem::RunGenerate(config, seed, out);
      std::cout << sfcem::Json({{"manifest", (fs::path(out) / "manifest.json").string()},
                                {"digest", digest}})
                       .dump()
                << "\n";
    } else if (*train) {
      std::optional<sfcem::FilterMode> mode;
      if (!filter_mode.empty()) mode = sfcem::ParseFilterMode(filter_mode);
      sfcem::RunTrain(config, seed, sfcem::ParsePolicyKind(policy), mode, scenarios, out);
    } else if (*eval) {
      std::optional<fs::path> file;
      if (!policy_file.empty()) file = policy_file;
      sfcem::RunEval(config, seed, sfcem::ParsePolicyKind(policy), file, scenarios, out);
    } else if (*oracle) {
      sfcem::RunOracle(config, scenario_file, out);
    } else if (*compare) {
      sfcem::RunCompare(config, seed, scenarios, out);
    }
  } catch (const sfcem::Error& e) {
    PrintError(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    PrintError("internal", e.what());
    return 1;
  }
  return 0;
}
