#pragma once

#include <optional>
#include <vector>

#include "bmod/lang/scenario.hpp"

namespace bmod::lang
{

/// Locates one door item: room plus index into that room's items.
struct DoorRef
{
  RoomRef room;
  std::size_t item = 0;

  friend bool operator==(const DoorRef &, const DoorRef &) = default;
};

enum class DoorStatus {
  paired,         ///< counterpart found and consistent
  exit_only,      ///< exit door with no counterpart; leads outside
  same_room,      ///< `to` names the door's own room
  unknown_room,   ///< `to` names no room
  no_counterpart, ///< no same-named door where one is required
  mismatch,       ///< counterpart's own `to` points elsewhere
  ambiguous,      ///< same-named doors in more than one other room
};

struct DoorLink
{
  DoorRef door;
  DoorStatus status = DoorStatus::no_counterpart;
  std::optional<DoorRef> counterpart;
};

/// Resolves every door of the scenario, in declaration order.
///
/// A door with `to "R"` pairs with the door of the same name in room R. A door
/// without a target pairs with the unique same-named door in another room. If
/// the counterpart declares a target, it must name this door's room. Exit
/// doors without a counterpart are valid on their own.
std::vector<DoorLink> pair_doors(const Scenario & scenario);

}  // namespace bmod::lang
