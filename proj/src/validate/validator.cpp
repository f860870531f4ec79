#include "bmod/validate/validator.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "bmod/lang/doors.hpp"
#include "bmod/lang/parser.hpp"
#include "bmod/sim/floorplan.hpp"

namespace bmod::validate
{

using lang::ItemKind;

const std::vector<RuleInfo> & catalogue()
{
  static const std::vector<RuleInfo> rules{
    {rule::dup_name, Severity::error, "two floors, rooms or people share a name, or a door name is reused"},
    {rule::out_of_bounds, Severity::error, "item lies outside its room's grid"},
    {rule::on_wall, Severity::error, "person, fire or sign placed on a wall cell"},
    {rule::door_same_room, Severity::error, "door leads to its own room"},
    {rule::door_unpaired, Severity::error, "non-exit door without a matching door in the target room"},
    {rule::no_exit, Severity::warning, "person cannot reach any unlocked exit"},
    {rule::empty, Severity::warning, "scenario or floor declares nothing"},
    {rule::overlap_wall_door, Severity::error, "door placed on a wall cell"},
  };
  return rules;
}

namespace
{

/// Sort key; -1 marks "not applicable" so broader findings come first.
struct Located
{
  std::int64_t floor = -1;
  std::int64_t room = -1;
  std::int64_t y = -1;
  std::int64_t x = -1;
  Diagnostic diagnostic;
};

Severity severity_of(std::string_view code)
{
  for (const auto & r : catalogue()) {
    if (r.code == code) {
      return r.severity;
    }
  }
  return Severity::error;
}

class Checker
{
public:
  explicit Checker(const lang::Scenario & s) : s_(s) {}

  Diagnostics run()
  {
    if (s_.floors.empty()) {
      add({}, rule::empty, "scenario declares no floors", std::nullopt);
    }
    check_names();
    check_placement();
    check_doors();
    if (std::none_of(found_.begin(), found_.end(),
                     [](const Located & l) { return l.diagnostic.severity == Severity::error; })) {
      check_reachability();
    }

    std::stable_sort(found_.begin(), found_.end(), [](const Located & a, const Located & b) {
      return std::tie(a.floor, a.room, a.y, a.x, a.diagnostic.code) <
             std::tie(b.floor, b.room, b.y, b.x, b.diagnostic.code);
    });
    Diagnostics out;
    out.reserve(found_.size());
    for (auto & l : found_) {
      out.push_back(std::move(l.diagnostic));
    }
    return out;
  }

private:
  void add(Located where, std::string_view code, std::string message, std::optional<SourceSpan> span)
  {
    where.diagnostic = Diagnostic{severity_of(code), std::string(code), std::move(message), {}, {}, false};
    if (span) {
      where.diagnostic.span = *span;
      where.diagnostic.has_span = true;
    }
    found_.push_back(std::move(where));
  }

  static Located at_floor(std::size_t f) { return Located{static_cast<std::int64_t>(f), -1, -1, -1, {}}; }

  static Located at_room(std::size_t f, std::size_t r)
  {
    return Located{static_cast<std::int64_t>(f), static_cast<std::int64_t>(r), -1, -1, {}};
  }

  static Located at_item(std::size_t f, std::size_t r, const lang::Item & item)
  {
    return Located{static_cast<std::int64_t>(f), static_cast<std::int64_t>(r), item.at.y, item.at.x, {}};
  }

  void check_names()
  {
    std::map<std::string, std::size_t, std::less<>> floors, rooms, people;
    for (std::size_t f = 0; f < s_.floors.size(); ++f) {
      const auto & floor = s_.floors[f];
      if (floors[floor.name]++ > 0) {
        add(at_floor(f), rule::dup_name, "duplicate floor name '" + floor.name + "'", floor.span);
      }
      if (floor.rooms.empty()) {
        add(at_floor(f), rule::empty, "floor '" + floor.name + "' declares no rooms", floor.span);
      }
      for (std::size_t r = 0; r < floor.rooms.size(); ++r) {
        const auto & room = floor.rooms[r];
        if (rooms[room.name]++ > 0) {
          add(at_room(f, r), rule::dup_name,
              "duplicate room name '" + room.name + "'", room.span);
        }
        std::map<std::string, std::size_t, std::less<>> doors;
        for (const auto & item : room.items) {
          if (item.kind == ItemKind::person && people[item.name]++ > 0) {
            add(at_item(f, r, item), rule::dup_name, "duplicate person name '" + item.name + "'", item.span);
          }
          if (item.kind == ItemKind::door && doors[item.name]++ > 0) {
            add(at_item(f, r, item), rule::dup_name,
                "door name '" + item.name + "' used twice in room '" + room.name + "'", item.span);
          }
        }
      }
    }
  }

  void check_placement()
  {
    for (std::size_t f = 0; f < s_.floors.size(); ++f) {
      for (std::size_t r = 0; r < s_.floors[f].rooms.size(); ++r) {
        const auto & room = s_.floors[f].rooms[r];
        if (room.width < 1 || room.height < 1 || room.width > lang::max_room_side ||
            room.height > lang::max_room_side || room.width * room.height > lang::max_room_area) {
          add(at_room(f, r), rule::out_of_bounds,
              "room '" + room.name + "' has unsupported dimensions", room.span);
          continue;
        }
        auto inside = [&](const lang::Coord & c) {
          return c.x >= 0 && c.y >= 0 && c.x < room.width && c.y < room.height;
        };
        std::vector<bool> wall(static_cast<std::size_t>(room.width * room.height), false);
        for (const auto & item : room.items) {
          if (item.kind == ItemKind::wall && inside(item.at)) {
            wall[static_cast<std::size_t>(item.at.y * room.width + item.at.x)] = true;
          }
        }
        for (const auto & item : room.items) {
          const std::string where = "(" + std::to_string(item.at.x) + "," + std::to_string(item.at.y) + ")";
          if (!inside(item.at)) {
            add(at_item(f, r, item), rule::out_of_bounds,
                std::string(to_string(item.kind)) + " at " + where + " lies outside room '" + room.name + "' (" +
                  std::to_string(room.width) + " x " + std::to_string(room.height) + ")",
                item.span);
            continue;
          }
          if (!wall[static_cast<std::size_t>(item.at.y * room.width + item.at.x)]) {
            continue;
          }
          if (item.kind == ItemKind::door) {
            add(at_item(f, r, item), rule::overlap_wall_door, "door '" + item.name + "' at " + where + " is on a wall",
                item.span);
          } else if (item.kind != ItemKind::wall) {
            add(at_item(f, r, item), rule::on_wall, std::string(to_string(item.kind)) + " at " + where + " is on a wall",
                item.span);
          }
        }
      }
    }
  }

  void check_doors()
  {
    for (const auto & link : lang::pair_doors(s_)) {
      const auto f = link.door.room.floor;
      const auto r = link.door.room.room;
      const auto & room = s_.floors[f].rooms[r];
      const auto & item = room.items[link.door.item];
      const std::string door = "door '" + item.name + "' in room '" + room.name + "'";
      switch (link.status) {
        case lang::DoorStatus::paired:
        case lang::DoorStatus::exit_only:
          break;
        case lang::DoorStatus::same_room:
          add(at_item(f, r, item), rule::door_same_room, door + " leads to its own room", item.span);
          break;
        case lang::DoorStatus::unknown_room:
          add(at_item(f, r, item), rule::door_unpaired, door + " targets unknown room '" + *item.target + "'",
              item.span);
          break;
        case lang::DoorStatus::no_counterpart:
          add(at_item(f, r, item), rule::door_unpaired,
              door + (item.target ? " has no counterpart named '" + item.name + "' in room '" + *item.target + "'"
                                  : " has no counterpart in any other room"),
              item.span);
          break;
        case lang::DoorStatus::mismatch:
          add(at_item(f, r, item), rule::door_unpaired, door + " and its counterpart disagree on their rooms",
              item.span);
          break;
        case lang::DoorStatus::ambiguous:
          add(at_item(f, r, item), rule::dup_name, door + " matches doors in more than one other room", item.span);
          break;
      }
    }
  }

  void check_reachability()
  {
    const sim::Floorplan plan(s_);
    const auto field = sim::distance_field(plan, {});
    std::size_t flat = 0;
    for (std::size_t f = 0; f < s_.floors.size(); ++f) {
      for (std::size_t r = 0; r < s_.floors[f].rooms.size(); ++r, ++flat) {
        for (const auto & item : s_.floors[f].rooms[r].items) {
          if (item.kind != ItemKind::person) {
            continue;
          }
          auto cell = plan.index_of(sim::CellRef{flat, item.at.x, item.at.y});
          if (cell && !field.reachable(*cell)) {
            add(at_item(f, r, item), rule::no_exit, "person '" + item.name + "' cannot reach any unlocked exit",
                item.span);
          }
        }
      }
    }
  }

  const lang::Scenario & s_;
  std::vector<Located> found_;
};

}  // namespace

Diagnostics validate(const lang::Scenario & scenario) { return Checker(scenario).run(); }

}  // namespace bmod::validate
