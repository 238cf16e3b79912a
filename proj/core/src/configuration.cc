#include "sfcem/configuration.h"

#include "sfcem/error.h"

namespace sfcem {

std::string ToString(SlotKind kind) {
  switch (kind) {
    case SlotKind::kServer:
      return "server";
    case SlotKind::kSwitchLocal:
      return "lm";
    case SlotKind::kSwitchExternal:
      return "em";
  }
  return "?";
}

std::string ToString(const HostSlot& slot) {
  return ToString(slot.kind) + "@" + std::to_string(slot.node);
}

SlotSpace::SlotSpace(const SubstrateNetwork& net)
    : server_slot_(net.node_count(), -1), lm_slot_(net.node_count(), -1) {
  for (const Server& m : net.servers()) {
    server_slot_[m.id] = size();
    slots_.push_back({SlotKind::kServer, m.id});
  }
  for (const Switch& s : net.switches()) {
    lm_slot_[s.id] = size();
    slots_.push_back({SlotKind::kSwitchLocal, s.id});
    slots_.push_back({SlotKind::kSwitchExternal, s.id});
  }
}

int SlotSpace::IndexOf(const HostSlot& slot) const {
  const bool known =
      slot.node >= 0 && slot.node < static_cast<int>(server_slot_.size());
  if (known && slot.kind == SlotKind::kServer && server_slot_[slot.node] >= 0) {
    return server_slot_[slot.node];
  }
  if (known && slot.kind != SlotKind::kServer && lm_slot_[slot.node] >= 0) {
    return lm_slot_[slot.node] +
           (slot.kind == SlotKind::kSwitchExternal ? 1 : 0);
  }
  throw LookupError("slot " + ToString(slot) + " does not exist");
}

}  // namespace sfcem
