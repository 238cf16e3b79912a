#include "sfcem/network.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "sfcem/error.h"
#include "sfcem/rng.h"
#include "sfcem/units.h"

namespace sfcem {
namespace {

std::string NodeName(NodeId n) { return "node " + std::to_string(n); }

void RequirePositive(double v, const std::string& field) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ConfigError(field + ": must be positive, got " + std::to_string(v));
  }
}

void RequireNonNegative(double v, const std::string& field) {
  if (!(v >= 0) || !std::isfinite(v)) {
    throw ConfigError(field + ": must be non-negative, got " +
                      std::to_string(v));
  }
}

void ValidateRange(const Range& r, const std::string& field, bool positive) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max) {
    throw ConfigError(field + ": empty range [" + std::to_string(r.min) +
                      ", " + std::to_string(r.max) + "]");
  }
  if (positive ? r.min <= 0 : r.min < 0) {
    throw ConfigError(field + ": lower bound out of domain");
  }
}

}  // namespace

SubstrateNetwork::SubstrateNetwork(std::vector<Switch> switches,
                                   std::vector<Server> servers,
                                   std::vector<Link> links)
    : switches_(std::move(switches)),
      servers_(std::move(servers)),
      links_(std::move(links)) {
  const int n = static_cast<int>(switches_.size() + servers_.size());
  if (n == 0) throw ConfigError("nodes: network has no nodes");
  kind_.assign(n, NodeKind::kServer);
  index_.assign(n, -1);
  auto claim = [&](NodeId id, NodeKind kind, int idx) {
    if (id < 0 || id >= n) {
      throw ConfigError("nodes: id " + std::to_string(id) +
                        " outside dense range [0, " + std::to_string(n) + ")");
    }
    if (index_[id] != -1) {
      throw ConfigError("nodes: duplicate id " + std::to_string(id));
    }
    kind_[id] = kind;
    index_[id] = idx;
  };

  vnf_types_ = -1;
  auto check_types = [&](std::size_t count, const std::string& field) {
    if (vnf_types_ == -1) vnf_types_ = static_cast<int>(count);
    if (static_cast<int>(count) != vnf_types_) {
      throw ConfigError(field + ": per-type vector has " +
                        std::to_string(count) + " entries, expected " +
                        std::to_string(vnf_types_));
    }
  };

  for (std::size_t i = 0; i < switches_.size(); ++i) {
    const Switch& s = switches_[i];
    const std::string f = "switches[" + std::to_string(i) + "]";
    claim(s.id, NodeKind::kSwitch, static_cast<int>(i));
    RequirePositive(s.lm_capacity_mb, f + ".lm_capacity_mb");
    RequirePositive(s.em_capacity_mb, f + ".em_capacity_mb");
    RequirePositive(s.rdma_table_mb, f + ".rdma_table_mb");
    RequireNonNegative(s.lm_cost_per_mb, f + ".lm_cost_per_mb");
    RequireNonNegative(s.em_cost_per_mb, f + ".em_cost_per_mb");
    RequireNonNegative(s.rdma_access_delay_ms, f + ".rdma_access_delay_ms");
    RequirePositive(s.controller_bandwidth_mbps,
                    f + ".controller_bandwidth_mbps");
    RequireNonNegative(s.controller_cost_per_mb, f + ".controller_cost_per_mb");
    check_types(s.lm_unit_delay_ms.size(), f + ".lm_unit_delay_ms");
    for (double d : s.lm_unit_delay_ms) {
      RequireNonNegative(d, f + ".lm_unit_delay_ms");
    }
  }
  for (std::size_t i = 0; i < servers_.size(); ++i) {
    const Server& m = servers_[i];
    const std::string f = "servers[" + std::to_string(i) + "]";
    claim(m.id, NodeKind::kServer, static_cast<int>(i));
    RequirePositive(m.storage_capacity_mb, f + ".storage_capacity_mb");
    RequireNonNegative(m.storage_cost_per_mb, f + ".storage_cost_per_mb");
    check_types(m.vnf_unit_delay_ms.size(), f + ".vnf_unit_delay_ms");
    for (double d : m.vnf_unit_delay_ms) {
      RequireNonNegative(d, f + ".vnf_unit_delay_ms");
    }
  }
  if (vnf_types_ < 0) vnf_types_ = 0;

  adjacency_.assign(n, {});
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    const std::string f = "links[" + std::to_string(i) + "]";
    if (!Contains(l.u) || !Contains(l.v) || l.u == l.v) {
      throw ConfigError(f + ": invalid endpoints (" + std::to_string(l.u) +
                        ", " + std::to_string(l.v) + ")");
    }
    if (LinkBetween(l.u, l.v)) throw ConfigError(f + ": parallel link");
    RequirePositive(l.bandwidth_mbps, f + ".bandwidth_mbps");
    RequireNonNegative(l.cost_per_mb, f + ".cost_per_mb");
    RequireNonNegative(l.delay_ms, f + ".delay_ms");
    adjacency_[l.u].push_back({l.v, static_cast<int>(i)});
    adjacency_[l.v].push_back({l.u, static_cast<int>(i)});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Adjacent& a, const Adjacent& b) { return a.node < b.node; });
  }
  if (!IsConnected(*this)) throw ConfigError("links: network is not connected");
}

NodeKind SubstrateNetwork::kind(NodeId n) const {
  if (!Contains(n)) throw LookupError("unknown " + NodeName(n));
  return kind_[n];
}

int SubstrateNetwork::ServerIndex(NodeId n) const {
  if (kind(n) != NodeKind::kServer) {
    throw LookupError(NodeName(n) + " is not a server");
  }
  return index_[n];
}

int SubstrateNetwork::SwitchIndex(NodeId n) const {
  if (kind(n) != NodeKind::kSwitch) {
    throw LookupError(NodeName(n) + " is not a switch");
  }
  return index_[n];
}

const std::vector<SubstrateNetwork::Adjacent>& SubstrateNetwork::adjacency(
    NodeId n) const {
  if (!Contains(n)) throw LookupError("unknown " + NodeName(n));
  return adjacency_[n];
}

std::optional<int> SubstrateNetwork::LinkBetween(NodeId u, NodeId v) const {
  if (!Contains(u) || !Contains(v)) return std::nullopt;
  for (const Adjacent& a : adjacency_[u]) {
    if (a.node == v) return a.link;
  }
  return std::nullopt;
}

std::vector<NodeId> Neighbors(const SubstrateNetwork& net, NodeId node) {
  std::vector<NodeId> out;
  for (const auto& a : net.adjacency(node)) out.push_back(a.node);
  return out;
}

bool IsConnected(const SubstrateNetwork& net) {
  const int n = net.node_count();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::deque<NodeId> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (const auto& a : net.adjacency(u)) {
      if (!seen[a.node]) {
        seen[a.node] = true;
        ++reached;
        queue.push_back(a.node);
      }
    }
  }
  return reached == n;
}

void ParamRanges::Validate() const {
  ValidateRange(server_storage_gb, "server_storage_gb", true);
  ValidateRange(server_cost_per_gb, "server_cost_per_gb", false);
  ValidateRange(server_unit_delay_ms_per_mb, "server_unit_delay_ms_per_mb",
                false);
  ValidateRange(lm_capacity_mb, "lm_capacity_mb", true);
  ValidateRange(em_capacity_mb, "em_capacity_mb", true);
  if (!rdma_table_equals_lm) ValidateRange(rdma_table_mb, "rdma_table_mb", true);
  ValidateRange(lm_cost_per_mb, "lm_cost_per_mb", false);
  ValidateRange(em_cost_per_mb, "em_cost_per_mb", false);
  ValidateRange(switch_unit_delay_ms_per_mb, "switch_unit_delay_ms_per_mb",
                false);
  ValidateRange(rdma_delay_ns, "rdma_delay_ns", false);
  ValidateRange(controller_bandwidth_gbps, "controller_bandwidth_gbps", true);
  ValidateRange(controller_cost_per_gb, "controller_cost_per_gb", false);
  ValidateRange(link_bandwidth_gbps, "link_bandwidth_gbps", true);
  ValidateRange(link_cost_per_gb, "link_cost_per_gb", false);
  ValidateRange(link_delay_ms, "link_delay_ms", false);
  if (vnf_types < 1) throw ConfigError("vnf_types: must be at least 1");
  if (core_switches < 0) throw ConfigError("core_switches: must be >= 0");
}

int CoreSwitchCount(int switch_count, const ParamRanges& ranges) {
  if (ranges.core_switches > 0) return ranges.core_switches;
  return std::max(1, (2 * switch_count + 2) / 5);
}

SubstrateNetwork BuildFatTree(int switch_count, int server_count,
                              const ParamRanges& ranges, uint64_t seed) {
  if (switch_count < 2) {
    throw ConfigError("switch_count: need at least 2 (one core, one edge)");
  }
  if (server_count < 1) throw ConfigError("server_count: need at least 1");
  ranges.Validate();
  const int core = CoreSwitchCount(switch_count, ranges);
  if (core >= switch_count) {
    throw ConfigError("core_switches: leaves no edge switch");
  }
  const int edge = switch_count - core;

  Rng rng(seed);
  auto draw = [&rng](const Range& r) { return rng.Uniform(r.min, r.max); };

  std::vector<Switch> switches(switch_count);
  for (int s = 0; s < switch_count; ++s) {
    Switch& sw = switches[s];
    sw.id = s;
    sw.lm_capacity_mb = draw(ranges.lm_capacity_mb);
    sw.em_capacity_mb = draw(ranges.em_capacity_mb);
    sw.rdma_table_mb = ranges.rdma_table_equals_lm
                           ? sw.lm_capacity_mb
                           : draw(ranges.rdma_table_mb);
    sw.lm_cost_per_mb = draw(ranges.lm_cost_per_mb);
    sw.em_cost_per_mb = draw(ranges.em_cost_per_mb);
    sw.lm_unit_delay_ms.resize(ranges.vnf_types);
    for (double& d : sw.lm_unit_delay_ms) {
      d = draw(ranges.switch_unit_delay_ms_per_mb);
    }
    sw.rdma_access_delay_ms = draw(ranges.rdma_delay_ns) * units::kMsPerNs;
    sw.controller_bandwidth_mbps =
        draw(ranges.controller_bandwidth_gbps) * units::kMbpsPerGbps;
    sw.controller_cost_per_mb =
        units::PerGbToPerMb(draw(ranges.controller_cost_per_gb));
  }

  std::vector<Server> servers(server_count);
  for (int m = 0; m < server_count; ++m) {
    Server& sv = servers[m];
    sv.id = switch_count + m;
    sv.storage_capacity_mb = draw(ranges.server_storage_gb) * units::kMbPerGb;
    sv.storage_cost_per_mb = units::PerGbToPerMb(draw(ranges.server_cost_per_gb));
    sv.vnf_unit_delay_ms.resize(ranges.vnf_types);
    for (double& d : sv.vnf_unit_delay_ms) {
      d = draw(ranges.server_unit_delay_ms_per_mb);
    }
  }

  std::vector<Link> links;
  auto add_link = [&](NodeId u, NodeId v) {
    Link l;
    l.u = u;
    l.v = v;
    l.bandwidth_mbps = draw(ranges.link_bandwidth_gbps) * units::kMbpsPerGbps;
    l.cost_per_mb = units::PerGbToPerMb(draw(ranges.link_cost_per_gb));
    l.delay_ms = draw(ranges.link_delay_ms);
    links.push_back(l);
  };
  for (int c = 0; c < core; ++c) {
    for (int e = 0; e < edge; ++e) add_link(c, core + e);
  }
  for (int m = 0; m < server_count; ++m) {
    add_link(core + m % edge, switch_count + m);
  }

  return SubstrateNetwork(std::move(switches), std::move(servers),
                          std::move(links));
}

}  // namespace sfcem
