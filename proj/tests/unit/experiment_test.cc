#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "sfcem/baselines.h"
#include "sfcem/error.h"
#include "sfcem/experiment.h"

namespace sfcem {
namespace {

std::string ConfigErrorOf(const Json& j) {
  try {
    ExperimentConfigFromJson(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ExperimentConfig, ErrorsNameSectionAndField) {
  EXPECT_EQ(ConfigErrorOf(Json::parse(R"({"workload": {"requests": "many"}})")).rfind(
                "workload.requests", 0),
            0u);
  EXPECT_EQ(ConfigErrorOf(Json::parse(R"({"training": {"target_transform": "log"}})"))
                .rfind("training.target_transform", 0),
            0u);
  EXPECT_EQ(ConfigErrorOf(Json::parse(R"({"network": {"hubs": 3}})")).rfind("network.hubs", 0),
            0u);
  EXPECT_FALSE(ConfigErrorOf(Json::parse(R"({"extras": {}})")).empty());
  EXPECT_TRUE(ConfigErrorOf(Json::parse("{}")).empty());
}

TEST(ExperimentConfig, JsonRoundTrip) {
  ExperimentConfig c;
  c.training.target = TargetTransform::kSquash;
  c.training.epsilon.shape = EpsilonSchedule::Shape::kExponential;
  c.workload.request_count = 17;
  const ExperimentConfig back = ExperimentConfigFromJson(ToJson(c));
  EXPECT_EQ(ToJson(back), ToJson(c));
  EXPECT_EQ(back.training.target, TargetTransform::kSquash);
  EXPECT_EQ(back.workload.request_count, 17);
}

TEST(TraceCsv, HeaderAndRows) {
  const std::string csv = TraceCsv({{0, 0.5, 1.0}, {1, 0.25, 0.5}});
  EXPECT_EQ(csv, "episode,mean_reward,epsilon\n0,0.5,1\n1,0.25,0.5\n");
}

ExperimentConfig Tiny() {
  ExperimentConfig c;
  c.network.switches = 4;
  c.network.servers = 4;
  c.workload.request_count = 6;
  c.workload.vnf_types = 2;
  c.network.ranges.vnf_types = 2;
  c.workload.instances_per_type = 2;
  c.workload.max_chain_length = 2;
  c.workload.schedule = {4, 2};
  c.dataset.train = 3;
  c.dataset.test = 2;
  return c;
}

std::vector<std::vector<std::string>> Rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

TEST(MetricsCsv, MeanRowsAverageScenarioRows) {
  const Dataset d = GenerateDataset(Tiny(), 3);
  const std::vector<EvalRow> rows = EvaluatePolicy(LagPolicy(), d.test, {}, 1);
  ASSERT_EQ(rows.size(), 2u * 4u);
  const auto table = Rows(MetricsCsv(rows));
  ASSERT_EQ(table[0].size(), 14u);
  EXPECT_EQ(table[0][4], "acceptance_ratio");
  ASSERT_EQ(table.size(), 1u + 8u + 4u);
  for (int t = 0; t < 4; ++t) {
    const auto& mean = table[9 + t];
    EXPECT_EQ(mean[1], "mean");
    EXPECT_EQ(std::stoi(mean[2]), t);
    for (int col = 4; col < 14; ++col) {
      double sum = 0;
      for (int r = 1; r <= 8; ++r) {
        if (std::stoi(table[r][2]) == t) sum += std::stod(table[r][col]);
      }
      EXPECT_NEAR(std::stod(mean[col]), sum / 2, 1e-8 * (1 + std::abs(sum))) << col;
    }
  }
}

TEST(GenerateDataset, DeterministicSharedNetworkAndStableDigest) {
  const Dataset a = GenerateDataset(Tiny(), 9);
  const Dataset b = GenerateDataset(Tiny(), 9);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  ASSERT_EQ(a.train.size(), 3u);
  for (const Scenario& s : a.test) EXPECT_EQ(s.network, a.train[0].network);

  const auto dir = std::filesystem::temp_directory_path() / "sfcem_experiment_test";
  std::filesystem::remove_all(dir);
  const std::string d1 = RunGenerate(Tiny(), 9, dir / "one");
  const std::string d2 = RunGenerate(Tiny(), 9, dir / "two");
  EXPECT_EQ(d1, d2);
  EXPECT_EQ(LoadScenarios(dir / "one", "train"), a.train);

  ExperimentConfig single = Tiny();
  single.dataset.train = 1;
  single.dataset.test = 0;
  RunGenerate(single, 9, dir / "single");
  EXPECT_EQ(LoadScenarios(dir / "single", "train").size(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(Sha256Hex, KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace sfcem
