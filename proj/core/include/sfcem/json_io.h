#ifndef SFCEM_JSON_IO_H_
#define SFCEM_JSON_IO_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "sfcem/configuration.h"
#include "sfcem/drl.h"
#include "sfcem/network.h"
#include "sfcem/oracle.h"
#include "sfcem/workload.h"

namespace sfcem {

using Json = nlohmann::json;

inline constexpr int kPolicyFormatVersion = 1;
inline constexpr int kScenarioFormatVersion = 1;

Json ToJson(const HostSlot& slot);
HostSlot HostSlotFromJson(const Json& j);

Json ToJson(const SubstrateNetwork& net);
SubstrateNetwork NetworkFromJson(const Json& j);

Json ToJson(const VnfCatalog& catalog);
VnfCatalog CatalogFromJson(const Json& j);

Json ToJson(const PlacementConfiguration& config);
PlacementConfiguration ConfigurationFromJson(const Json& j);

Json ToJson(const Scenario& scenario);
Scenario ScenarioFromJson(const Json& j);

Json ToJson(const PolicyBank& bank);
// Throws IoError on a wrong format tag or version.
PolicyBank PolicyBankFromJson(const Json& j);

Json ToJson(const OracleResult& result);

// Reads and parses a JSON file; IoError on failure.
Json ReadJsonFile(const std::filesystem::path& path);
// Writes through a temporary file in the same directory, then renames.
void WriteFileAtomic(const std::filesystem::path& path, const std::string& content);
// Pretty-printed with a trailing newline.
std::string DumpJson(const Json& j);

}  // namespace sfcem

#endif  // SFCEM_JSON_IO_H_
