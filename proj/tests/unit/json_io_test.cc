#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "sfcem/drl.h"
#include "sfcem/error.h"
#include "sfcem/json_io.h"
#include "support/fixtures.h"

namespace sfcem {
namespace {

Scenario Sample() {
  return testing::MakeScenarios(testing::Shape{4, 4, 2, 2, 6, 4, 2}, 1, 51)[0];
}

TEST(JsonIo, ScenarioRoundTripThroughText) {
  const Scenario sc = Sample();
  const Scenario back = ScenarioFromJson(Json::parse(DumpJson(ToJson(sc))));
  EXPECT_EQ(back, sc);
  EXPECT_EQ(DumpJson(ToJson(back)), DumpJson(ToJson(sc)));
}

TEST(JsonIo, NetworkRoundTrip) {
  const Scenario sc = Sample();
  EXPECT_EQ(NetworkFromJson(Json::parse(DumpJson(ToJson(sc.network)))), sc.network);
  EXPECT_EQ(CatalogFromJson(ToJson(sc.catalog)), sc.catalog);
}

TEST(JsonIo, PolicyRoundTripIsBitExact) {
  const Scenario sc = Sample();
  const PolicyBank bank = MakePolicyBank(sc.network, sc.catalog, sc.epochs(),
                                         FilterMode::kHybrid, false, 0.37, 5);
  EXPECT_EQ(PolicyBankFromJson(Json::parse(DumpJson(ToJson(bank)))), bank);
}

TEST(JsonIo, WrongFormatOrVersionIsIoError) {
  const Scenario sc = Sample();
  Json policy = ToJson(MakePolicyBank(sc.network, sc.catalog, sc.epochs(),
                                      FilterMode::kHybrid, false, 0.01, 5));
  Json wrong_format = policy;
  wrong_format["format"] = "sfcem-scenario";
  EXPECT_THROW(PolicyBankFromJson(wrong_format), IoError);
  policy["version"] = kPolicyFormatVersion + 1;
  EXPECT_THROW(PolicyBankFromJson(policy), IoError);

  Json scenario = ToJson(sc);
  scenario["version"] = kScenarioFormatVersion + 1;
  EXPECT_THROW(ScenarioFromJson(scenario), IoError);
  scenario.erase("version");
  EXPECT_THROW(ScenarioFromJson(scenario), IoError);
}

TEST(JsonIo, FilesAndGarbage) {
  const auto dir = std::filesystem::temp_directory_path() / "sfcem_json_io_test";
  std::filesystem::remove_all(dir);
  WriteFileAtomic(dir / "a.json", "{\"x\": 1}\n");
  EXPECT_EQ(ReadJsonFile(dir / "a.json")["x"], 1);
  std::ofstream(dir / "bad.json") << "{not json";
  EXPECT_THROW(ReadJsonFile(dir / "bad.json"), IoError);
  EXPECT_THROW(ReadJsonFile(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sfcem
