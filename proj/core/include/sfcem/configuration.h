#ifndef SFCEM_CONFIGURATION_H_
#define SFCEM_CONFIGURATION_H_

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "sfcem/network.h"

namespace sfcem {

enum class SlotKind { kServer = 0, kSwitchLocal = 1, kSwitchExternal = 2 };

std::string ToString(SlotKind kind);

// Where a VNF instance lives: a server, or the local / external memory of
// a switch.
struct HostSlot {
  SlotKind kind = SlotKind::kServer;
  NodeId node = 0;

  bool on_switch() const { return kind != SlotKind::kServer; }
  auto operator<=>(const HostSlot&) const = default;
};

std::string ToString(const HostSlot& slot);

// Dense labelling of every host slot of a network, in label order: all
// servers by server index, then for each switch its LM followed by its EM.
// Policy-network outputs and argmax tie-breaking follow this order.
class SlotSpace {
 public:
  explicit SlotSpace(const SubstrateNetwork& net);

  int size() const { return static_cast<int>(slots_.size()); }
  const HostSlot& slot(int index) const { return slots_[index]; }
  const std::vector<HostSlot>& slots() const { return slots_; }
  int IndexOf(const HostSlot& slot) const;

 private:
  std::vector<HostSlot> slots_;
  // Per node id: label index of the server slot, or of the switch's LM
  // slot (EM is the next index); -1 when absent.
  std::vector<int> server_slot_;
  std::vector<int> lm_slot_;
};

// Single-path routing of every chain. paths[q][l] is the node sequence for
// segment l of request q (segment 0 starts at the source, the last one ends
// at the destination); co-located endpoints give an empty path.
struct RoutePlan {
  std::vector<std::vector<std::vector<NodeId>>> paths;
  // Aggregate routed traffic per link index, Mbps.
  std::vector<double> link_load_mbps;

  bool operator==(const RoutePlan&) const = default;
};

// assignment[q][n] is the flat instance index serving the n-th VNF of q.
using Assignment = std::vector<std::vector<std::optional<int>>>;

// One epoch's decision variables. Which node serves a chain position is
// implied by instance_host of the assigned instance, so the two can never
// disagree.
struct PlacementConfiguration {
  // -1 for the pre-horizon configuration a scenario starts from.
  int epoch = -1;
  // Indexed by flat instance index; nullopt means the instance is not
  // deployed (a uniqueness violation, kept representable for validation).
  std::vector<std::optional<HostSlot>> instance_host;
  Assignment assignment;
  // Requests rejected by admission control this epoch. Empty means every
  // request is served. Unserved requests carry no traffic.
  std::vector<bool> unserved;
  RoutePlan routes;

  bool served(int request) const {
    return unserved.empty() || !unserved[request];
  }
  bool operator==(const PlacementConfiguration&) const = default;
};

// A host for every instance, indexed by flat instance index.
using Action = std::vector<HostSlot>;

}  // namespace sfcem

#endif  // SFCEM_CONFIGURATION_H_
