#ifndef SFCEM_NETWORK_H_
#define SFCEM_NETWORK_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sfcem {

// Node ids are dense: every id in [0, node_count) belongs to exactly one
// switch or server.
using NodeId = int;

enum class NodeKind { kServer, kSwitch };

struct Server {
  NodeId id = 0;
  double storage_capacity_mb = 0;
  double storage_cost_per_mb = 0;
  // Processing delay per MB of traffic, indexed by VNF type.
  std::vector<double> vnf_unit_delay_ms;

  bool operator==(const Server&) const = default;
};

struct Switch {
  NodeId id = 0;
  double lm_capacity_mb = 0;
  double em_capacity_mb = 0;
  double rdma_table_mb = 0;
  double lm_cost_per_mb = 0;
  double em_cost_per_mb = 0;
  // Local-memory processing delay per MB of traffic, indexed by VNF type.
  std::vector<double> lm_unit_delay_ms;
  double rdma_access_delay_ms = 0;
  double controller_bandwidth_mbps = 0;
  double controller_cost_per_mb = 0;

  bool operator==(const Switch&) const = default;
};

struct Link {
  NodeId u = 0;
  NodeId v = 0;
  double bandwidth_mbps = 0;
  double cost_per_mb = 0;
  double delay_ms = 0;

  NodeId Other(NodeId n) const { return n == u ? v : u; }
  bool operator==(const Link&) const = default;
};

// Servers, programmable switches and the links between them. The SDN
// controller is not a graph node; each switch carries its own controller
// uplink bandwidth and cost. Immutable after construction.
class SubstrateNetwork {
 public:
  struct Adjacent {
    NodeId node;
    int link;
  };

  SubstrateNetwork() = default;
  // Validates ids, capacities, per-type vector sizes and connectivity;
  // throws ConfigError naming the offending element.
  SubstrateNetwork(std::vector<Switch> switches, std::vector<Server> servers,
                   std::vector<Link> links);

  int node_count() const { return static_cast<int>(kind_.size()); }
  int server_count() const { return static_cast<int>(servers_.size()); }
  int switch_count() const { return static_cast<int>(switches_.size()); }
  int vnf_type_count() const { return vnf_types_; }

  const std::vector<Server>& servers() const { return servers_; }
  const std::vector<Switch>& switches() const { return switches_; }
  const std::vector<Link>& links() const { return links_; }

  bool Contains(NodeId n) const { return n >= 0 && n < node_count(); }
  NodeKind kind(NodeId n) const;
  bool IsServer(NodeId n) const { return kind(n) == NodeKind::kServer; }
  bool IsSwitch(NodeId n) const { return kind(n) == NodeKind::kSwitch; }
  // Position of the node inside servers() / switches().
  int ServerIndex(NodeId n) const;
  int SwitchIndex(NodeId n) const;
  const Server& ServerAt(NodeId n) const { return servers_[ServerIndex(n)]; }
  const Switch& SwitchAt(NodeId n) const { return switches_[SwitchIndex(n)]; }

  const std::vector<Adjacent>& adjacency(NodeId n) const;
  std::optional<int> LinkBetween(NodeId u, NodeId v) const;

  bool operator==(const SubstrateNetwork& o) const {
    return switches_ == o.switches_ && servers_ == o.servers_ &&
           links_ == o.links_;
  }

 private:
  std::vector<Switch> switches_;
  std::vector<Server> servers_;
  std::vector<Link> links_;
  std::vector<NodeKind> kind_;
  std::vector<int> index_;
  std::vector<std::vector<Adjacent>> adjacency_;
  int vnf_types_ = 0;
};

// All v with a link to `node`, sorted by id. Throws LookupError for an
// unknown node.
std::vector<NodeId> Neighbors(const SubstrateNetwork& net, NodeId node);

bool IsConnected(const SubstrateNetwork& net);

struct Range {
  double min = 0;
  double max = 0;
  bool operator==(const Range&) const = default;
};

// Parameter ranges for generated networks, in configuration units
// (GB, Gbps, ns where noted). Every value is drawn uniformly per element.
struct ParamRanges {
  Range server_storage_gb{10, 40};
  Range server_cost_per_gb{0.002, 0.003};
  Range server_unit_delay_ms_per_mb{0.1, 0.3};
  Range lm_capacity_mb{10, 35};
  Range em_capacity_mb{100, 500};
  // When set, the RDMA table of each switch is as large as its LM.
  bool rdma_table_equals_lm = true;
  Range rdma_table_mb{10, 35};
  Range lm_cost_per_mb{0.0021, 0.0024};
  Range em_cost_per_mb{0.0002, 0.0004};
  Range switch_unit_delay_ms_per_mb{0.01, 0.03};
  Range rdma_delay_ns{50, 150};
  Range controller_bandwidth_gbps{50, 50};
  Range controller_cost_per_gb{1.0, 1.0};
  Range link_bandwidth_gbps{30, 50};
  Range link_cost_per_gb{0.8, 1.0};
  Range link_delay_ms{0.5, 1.0};
  int vnf_types = 4;
  // Core-layer size; 0 selects round((2 * switches) / 5), at least 1.
  int core_switches = 0;

  // Throws ConfigError("<field>: ...") on an empty or negative range.
  void Validate() const;
  bool operator==(const ParamRanges&) const = default;
};

int CoreSwitchCount(int switch_count, const ParamRanges& ranges);

// Two-layer fat-tree: core switches fully meshed to edge switches, servers
// attached round-robin to edge switches. Switch ids come first (core, then
// edge), then servers. Identical seeds give identical networks.
SubstrateNetwork BuildFatTree(int switch_count, int server_count,
                              const ParamRanges& ranges, uint64_t seed);

}  // namespace sfcem

#endif  // SFCEM_NETWORK_H_
