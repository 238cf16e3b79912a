#include "sfcem/json_io.h"

#include <fstream>
#include <sstream>

#include "sfcem/error.h"

namespace sfcem {
namespace {

template <typename T>
T Field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw IoError(std::string("missing field '") + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("field '") + name + "': " + e.what());
  }
}

SlotKind ParseSlotKind(const std::string& s) {
  if (s == "server") return SlotKind::kServer;
  if (s == "lm") return SlotKind::kSwitchLocal;
  if (s == "em") return SlotKind::kSwitchExternal;
  throw IoError("unknown slot kind '" + s + "'");
}

Json RoutesToJson(const RoutePlan& plan) {
  return {{"paths", plan.paths}, {"link_load_mbps", plan.link_load_mbps}};
}

RoutePlan RoutesFromJson(const Json& j) {
  RoutePlan plan;
  plan.paths = Field<std::vector<std::vector<std::vector<NodeId>>>>(j, "paths");
  plan.link_load_mbps = Field<std::vector<double>>(j, "link_load_mbps");
  return plan;
}

}  // namespace

Json ToJson(const HostSlot& slot) {
  return {{"kind", ToString(slot.kind)}, {"node", slot.node}};
}

HostSlot HostSlotFromJson(const Json& j) {
  return {ParseSlotKind(Field<std::string>(j, "kind")), Field<NodeId>(j, "node")};
}

Json ToJson(const SubstrateNetwork& net) {
  Json switches = Json::array();
  for (const Switch& s : net.switches()) {
    switches.push_back({{"id", s.id},
                        {"lm_capacity_mb", s.lm_capacity_mb},
                        {"em_capacity_mb", s.em_capacity_mb},
                        {"rdma_table_mb", s.rdma_table_mb},
                        {"lm_cost_per_mb", s.lm_cost_per_mb},
                        {"em_cost_per_mb", s.em_cost_per_mb},
                        {"lm_unit_delay_ms", s.lm_unit_delay_ms},
                        {"rdma_access_delay_ms", s.rdma_access_delay_ms},
                        {"controller_bandwidth_mbps", s.controller_bandwidth_mbps},
                        {"controller_cost_per_mb", s.controller_cost_per_mb}});
  }
  Json servers = Json::array();
  for (const Server& s : net.servers()) {
    servers.push_back({{"id", s.id},
                       {"storage_capacity_mb", s.storage_capacity_mb},
                       {"storage_cost_per_mb", s.storage_cost_per_mb},
                       {"vnf_unit_delay_ms", s.vnf_unit_delay_ms}});
  }
  Json links = Json::array();
  for (const Link& l : net.links()) {
    links.push_back({{"u", l.u},
                     {"v", l.v},
                     {"bandwidth_mbps", l.bandwidth_mbps},
                     {"cost_per_mb", l.cost_per_mb},
                     {"delay_ms", l.delay_ms}});
  }
  return {{"switches", switches}, {"servers", servers}, {"links", links}};
}

SubstrateNetwork NetworkFromJson(const Json& j) {
  std::vector<Switch> switches;
  for (const Json& s : Field<Json>(j, "switches")) {
    Switch sw;
    sw.id = Field<NodeId>(s, "id");
    sw.lm_capacity_mb = Field<double>(s, "lm_capacity_mb");
    sw.em_capacity_mb = Field<double>(s, "em_capacity_mb");
    sw.rdma_table_mb = Field<double>(s, "rdma_table_mb");
    sw.lm_cost_per_mb = Field<double>(s, "lm_cost_per_mb");
    sw.em_cost_per_mb = Field<double>(s, "em_cost_per_mb");
    sw.lm_unit_delay_ms = Field<std::vector<double>>(s, "lm_unit_delay_ms");
    sw.rdma_access_delay_ms = Field<double>(s, "rdma_access_delay_ms");
    sw.controller_bandwidth_mbps = Field<double>(s, "controller_bandwidth_mbps");
    sw.controller_cost_per_mb = Field<double>(s, "controller_cost_per_mb");
    switches.push_back(std::move(sw));
  }
  std::vector<Server> servers;
  for (const Json& s : Field<Json>(j, "servers")) {
    Server sv;
    sv.id = Field<NodeId>(s, "id");
    sv.storage_capacity_mb = Field<double>(s, "storage_capacity_mb");
    sv.storage_cost_per_mb = Field<double>(s, "storage_cost_per_mb");
    sv.vnf_unit_delay_ms = Field<std::vector<double>>(s, "vnf_unit_delay_ms");
    servers.push_back(std::move(sv));
  }
  std::vector<Link> links;
  for (const Json& l : Field<Json>(j, "links")) {
    links.push_back({Field<NodeId>(l, "u"), Field<NodeId>(l, "v"),
                     Field<double>(l, "bandwidth_mbps"), Field<double>(l, "cost_per_mb"),
                     Field<double>(l, "delay_ms")});
  }
  return SubstrateNetwork(std::move(switches), std::move(servers), std::move(links));
}

Json ToJson(const VnfCatalog& catalog) {
  Json types = Json::array();
  for (const VnfType& t : catalog.types()) {
    types.push_back({{"id", t.id},
                     {"switch_footprint_mb", t.switch_footprint_mb},
                     {"server_footprint_mb", t.server_footprint_mb},
                     {"switch_capacity_mbps", t.switch_capacity_mbps},
                     {"server_capacity_mbps", t.server_capacity_mbps},
                     {"programming_traffic_mb", t.programming_traffic_mb},
                     {"instance_count", t.instance_count}});
  }
  return {{"types", types}};
}

VnfCatalog CatalogFromJson(const Json& j) {
  std::vector<VnfType> types;
  for (const Json& t : Field<Json>(j, "types")) {
    VnfType v;
    v.id = Field<int>(t, "id");
    v.switch_footprint_mb = Field<double>(t, "switch_footprint_mb");
    v.server_footprint_mb = Field<double>(t, "server_footprint_mb");
    v.switch_capacity_mbps = Field<double>(t, "switch_capacity_mbps");
    v.server_capacity_mbps = Field<double>(t, "server_capacity_mbps");
    v.programming_traffic_mb = Field<double>(t, "programming_traffic_mb");
    v.instance_count = Field<int>(t, "instance_count");
    types.push_back(v);
  }
  return VnfCatalog(std::move(types));
}

Json ToJson(const PlacementConfiguration& config) {
  Json hosts = Json::array();
  for (const auto& h : config.instance_host) {
    hosts.push_back(h ? ToJson(*h) : Json(nullptr));
  }
  Json assignment = Json::array();
  for (const auto& chain : config.assignment) {
    Json row = Json::array();
    for (const auto& k : chain) row.push_back(k ? Json(*k) : Json(nullptr));
    assignment.push_back(row);
  }
  return {{"epoch", config.epoch},
          {"instance_host", hosts},
          {"assignment", assignment},
          {"unserved", config.unserved},
          {"routes", RoutesToJson(config.routes)}};
}

PlacementConfiguration ConfigurationFromJson(const Json& j) {
  PlacementConfiguration c;
  c.epoch = Field<int>(j, "epoch");
  for (const Json& h : Field<Json>(j, "instance_host")) {
    c.instance_host.push_back(h.is_null() ? std::nullopt
                                          : std::optional<HostSlot>(HostSlotFromJson(h)));
  }
  for (const Json& row : Field<Json>(j, "assignment")) {
    std::vector<std::optional<int>> chain;
    for (const Json& k : row) {
      chain.push_back(k.is_null() ? std::nullopt : std::optional<int>(k.get<int>()));
    }
    c.assignment.push_back(std::move(chain));
  }
  c.unserved = Field<std::vector<bool>>(j, "unserved");
  c.routes = RoutesFromJson(Field<Json>(j, "routes"));
  return c;
}

Json ToJson(const Scenario& scenario) {
  Json requests = Json::array();
  for (const SfcRequest& q : scenario.requests) {
    requests.push_back({{"id", q.id},
                        {"vnfs", q.vnfs},
                        {"source", q.source},
                        {"destination", q.destination},
                        {"traffic_mbps", q.traffic_mbps},
                        {"deadline_ms", q.deadline_ms}});
  }
  return {{"format", "sfcem-scenario"},
          {"version", kScenarioFormatVersion},
          {"network", ToJson(scenario.network)},
          {"catalog", ToJson(scenario.catalog)},
          {"schedule",
           {{"epochs", scenario.schedule.epochs},
            {"working_epochs", scenario.schedule.working_epochs}}},
          {"requests", requests},
          {"initial_placement", ToJson(scenario.initial_placement)}};
}

Scenario ScenarioFromJson(const Json& j) {
  if (Field<int>(j, "version") != kScenarioFormatVersion) {
    throw IoError("unsupported scenario version");
  }
  Scenario s;
  s.network = NetworkFromJson(Field<Json>(j, "network"));
  s.catalog = CatalogFromJson(Field<Json>(j, "catalog"));
  const Json sched = Field<Json>(j, "schedule");
  s.schedule.epochs = Field<int>(sched, "epochs");
  s.schedule.working_epochs = Field<int>(sched, "working_epochs");
  for (const Json& r : Field<Json>(j, "requests")) {
    SfcRequest q;
    q.id = Field<int>(r, "id");
    q.vnfs = Field<std::vector<int>>(r, "vnfs");
    q.source = Field<NodeId>(r, "source");
    q.destination = Field<NodeId>(r, "destination");
    q.traffic_mbps = Field<std::vector<double>>(r, "traffic_mbps");
    q.deadline_ms = Field<std::vector<double>>(r, "deadline_ms");
    s.requests.push_back(std::move(q));
  }
  s.initial_placement = ConfigurationFromJson(Field<Json>(j, "initial_placement"));
  return s;
}

Json ToJson(const PolicyBank& bank) {
  Json heads = Json::array();
  for (const PolicyNet& h : bank.heads) {
    heads.push_back({{"outputs", h.outputs()}, {"weights", h.weights()}, {"bias", h.bias()}});
  }
  return {{"format", "sfcem-policy"},
          {"version", kPolicyFormatVersion},
          {"filter_mode", ToString(bank.filter_mode)},
          {"servers_only", bank.servers_only},
          {"input_dim", bank.input_dim},
          {"heads", heads}};
}

PolicyBank PolicyBankFromJson(const Json& j) {
  if (Field<std::string>(j, "format") != "sfcem-policy") {
    throw IoError("not a policy file");
  }
  if (Field<int>(j, "version") != kPolicyFormatVersion) {
    throw IoError("unsupported policy version");
  }
  PolicyBank bank;
  try {
    bank.filter_mode = ParseFilterMode(Field<std::string>(j, "filter_mode"));
  } catch (const ConfigError& e) {
    throw IoError(e.what());
  }
  bank.servers_only = Field<bool>(j, "servers_only");
  bank.input_dim = Field<int>(j, "input_dim");
  for (const Json& h : Field<Json>(j, "heads")) {
    bank.heads.emplace_back(bank.input_dim, Field<std::vector<int>>(h, "outputs"),
                            Field<std::vector<double>>(h, "weights"),
                            Field<std::vector<double>>(h, "bias"));
  }
  return bank;
}

Json ToJson(const OracleResult& result) {
  Json hosts = Json::array();
  for (const Action& a : result.hosts) {
    Json epoch = Json::array();
    for (const HostSlot& s : a) epoch.push_back(ToJson(s));
    hosts.push_back(epoch);
  }
  return {{"found", result.found},
          {"objective", result.objective},
          {"misses", result.misses},
          {"combinations", result.combinations},
          {"leaves_evaluated", result.leaves_evaluated},
          {"hosts", hosts}};
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void WriteFileAtomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string());
}

std::string DumpJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sfcem
