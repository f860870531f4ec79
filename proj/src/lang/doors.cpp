#include "bmod/lang/doors.hpp"

#include <map>

namespace bmod::lang
{

namespace
{

const RoomDecl & room_of(const Scenario & s, RoomRef r) { return s.floors[r.floor].rooms[r.room]; }
const Item & item_of(const Scenario & s, const DoorRef & d) { return room_of(s, d.room).items[d.item]; }

}  // namespace

std::vector<DoorLink> pair_doors(const Scenario & scenario)
{
  std::vector<DoorRef> doors;
  std::map<std::string, std::vector<DoorRef>, std::less<>> by_name;
  for (std::size_t f = 0; f < scenario.floors.size(); ++f) {
    for (std::size_t r = 0; r < scenario.floors[f].rooms.size(); ++r) {
      const auto & items = scenario.floors[f].rooms[r].items;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].kind == ItemKind::door) {
          doors.push_back({{f, r}, i});
          by_name[items[i].name].push_back(doors.back());
        }
      }
    }
  }

  std::vector<DoorLink> links;
  links.reserve(doors.size());
  for (const auto & door : doors) {
    const Item & item = item_of(scenario, door);
    const RoomDecl & home = room_of(scenario, door.room);
    DoorLink link{door, DoorStatus::no_counterpart, std::nullopt};
    const auto & namesakes = by_name[item.name];

    std::optional<DoorRef> candidate;
    if (item.target) {
      if (*item.target == home.name) {
        link.status = DoorStatus::same_room;
        links.push_back(link);
        continue;
      }
      auto target = find_room(scenario, *item.target);
      if (!target) {
        link.status = DoorStatus::unknown_room;
        links.push_back(link);
        continue;
      }
      for (const auto & other : namesakes) {
        if (other.room == *target) {
          candidate = other;
          break;
        }
      }
    } else {
      bool ambiguous = false;
      for (const auto & other : namesakes) {
        if (other.room == door.room) {
          continue;
        }
        if (candidate && !(candidate->room == other.room)) {
          ambiguous = true;
          break;
        }
        if (!candidate) {
          candidate = other;
        }
      }
      if (ambiguous) {
        link.status = DoorStatus::ambiguous;
        links.push_back(link);
        continue;
      }
    }

    if (!candidate) {
      link.status = item.exit && !item.target ? DoorStatus::exit_only : DoorStatus::no_counterpart;
    } else {
      const Item & other = item_of(scenario, *candidate);
      if (other.target && *other.target != home.name) {
        link.status = DoorStatus::mismatch;
      } else {
        link.status = DoorStatus::paired;
        link.counterpart = candidate;
      }
    }
    links.push_back(link);
  }
  return links;
}

}  // namespace bmod::lang
