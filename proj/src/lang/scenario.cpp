#include "bmod/lang/scenario.hpp"

#include <algorithm>

namespace bmod::lang
{

std::string_view to_string(Direction direction) noexcept
{
  switch (direction) {
    case Direction::north: return "north";
    case Direction::south: return "south";
    case Direction::east: return "east";
    case Direction::west: return "west";
  }
  return "north";
}

std::optional<Direction> direction_from_string(std::string_view text) noexcept
{
  if (text == "north") return Direction::north;
  if (text == "south") return Direction::south;
  if (text == "east") return Direction::east;
  if (text == "west") return Direction::west;
  return std::nullopt;
}

std::string_view to_string(ItemKind kind) noexcept
{
  switch (kind) {
    case ItemKind::wall: return "wall";
    case ItemKind::fire: return "fire";
    case ItemKind::sign: return "sign";
    case ItemKind::door: return "door";
    case ItemKind::person: return "person";
  }
  return "wall";
}

void canonicalize(Scenario & scenario)
{
  for (auto & floor : scenario.floors) {
    for (auto & room : floor.rooms) {
      std::stable_sort(room.items.begin(), room.items.end(), [](const Item & a, const Item & b) {
        if (a.at.y != b.at.y) return a.at.y < b.at.y;
        if (a.at.x != b.at.x) return a.at.x < b.at.x;
        return a.kind < b.kind;
      });
    }
  }
}

bool structurally_equal(Scenario a, Scenario b)
{
  canonicalize(a);
  canonicalize(b);
  return a == b;
}

std::optional<RoomRef> find_room(const Scenario & scenario, std::string_view name)
{
  for (std::size_t f = 0; f < scenario.floors.size(); ++f) {
    const auto & rooms = scenario.floors[f].rooms;
    for (std::size_t r = 0; r < rooms.size(); ++r) {
      if (rooms[r].name == name) {
        return RoomRef{f, r};
      }
    }
  }
  return std::nullopt;
}

}  // namespace bmod::lang
