#include "bmod/sim/floorplan.hpp"

#include <algorithm>
#include <deque>

#include "bmod/error.hpp"
#include "bmod/lang/doors.hpp"

namespace bmod::sim
{

Floorplan::Floorplan(lang::Scenario scenario) : scenario_(std::move(scenario))
{
  CellIndex offset = 0;
  for (std::size_t f = 0; f < scenario_.floors.size(); ++f) {
    const auto & floor = scenario_.floors[f];
    for (std::size_t r = 0; r < floor.rooms.size(); ++r) {
      const auto & room = floor.rooms[r];
      rooms_.push_back(Room{room.name, f, r, room.width, room.height, offset});
      offset += static_cast<CellIndex>(room.width * room.height);
    }
  }
  cell_room_.resize(offset);
  walls_.assign(offset, false);
  exits_.assign(offset, false);
  signs_.assign(offset, std::nullopt);
  links_.assign(offset, {});

  for (std::size_t ri = 0; ri < rooms_.size(); ++ri) {
    const Room & room = rooms_[ri];
    const auto cells = static_cast<CellIndex>(room.width * room.height);
    for (CellIndex k = 0; k < cells; ++k) {
      cell_room_[room.offset + k] = ri;
    }
  }

  // Locates a room-local coordinate; nullopt when outside the grid.
  auto locate = [&](std::size_t ri, const lang::Coord & at) { return index_of(CellRef{ri, at.x, at.y}); };
  auto flat_room = [&](lang::RoomRef ref) {
    for (std::size_t ri = 0; ri < rooms_.size(); ++ri) {
      if (rooms_[ri].floor == ref.floor && rooms_[ri].index_in_floor == ref.room) {
        return ri;
      }
    }
    return rooms_.size();
  };

  for (std::size_t ri = 0; ri < rooms_.size(); ++ri) {
    const auto & decl = scenario_.floors[rooms_[ri].floor].rooms[rooms_[ri].index_in_floor];
    for (const auto & item : decl.items) {
      auto c = locate(ri, item.at);
      if (!c) {
        continue;
      }
      if (item.kind == lang::ItemKind::wall) {
        walls_[*c] = true;
      } else if (item.kind == lang::ItemKind::sign && !signs_[*c]) {
        signs_[*c] = item.facing;
      }
    }
  }
  for (std::size_t ri = 0; ri < rooms_.size(); ++ri) {
    const auto & decl = scenario_.floors[rooms_[ri].floor].rooms[rooms_[ri].index_in_floor];
    for (const auto & item : decl.items) {
      auto c = locate(ri, item.at);
      if (c && item.kind == lang::ItemKind::door && item.exit && !item.locked && !walls_[*c]) {
        exits_[*c] = true;
      }
    }
  }

  // Jump edges need both ends unlocked and mutually paired.
  const auto links = lang::pair_doors(scenario_);
  auto door_item = [&](const lang::DoorRef & d) -> const lang::Item & {
    return scenario_.floors[d.room.floor].rooms[d.room.room].items[d.item];
  };
  for (const auto & link : links) {
    if (link.status != lang::DoorStatus::paired) {
      continue;
    }
    bool mutual = false;
    for (const auto & back : links) {
      if (back.door == *link.counterpart) {
        mutual = back.status == lang::DoorStatus::paired && back.counterpart && *back.counterpart == link.door;
        break;
      }
    }
    const auto & here = door_item(link.door);
    const auto & there = door_item(*link.counterpart);
    if (!mutual || here.locked || there.locked) {
      continue;
    }
    auto from = locate(flat_room(link.door.room), here.at);
    auto to = locate(flat_room(link.counterpart->room), there.at);
    if (!from || !to || walls_[*from] || walls_[*to]) {
      continue;
    }
    auto & out = links_[*from];
    if (std::find(out.begin(), out.end(), *to) == out.end()) {
      out.push_back(*to);
    }
  }
}

std::optional<CellIndex> Floorplan::index_of(const CellRef & cell) const noexcept
{
  if (cell.room >= rooms_.size()) {
    return std::nullopt;
  }
  const Room & room = rooms_[cell.room];
  if (cell.x < 0 || cell.y < 0 || cell.x >= room.width || cell.y >= room.height) {
    return std::nullopt;
  }
  return room.offset + static_cast<CellIndex>(cell.y * room.width + cell.x);
}

CellRef Floorplan::cell_at(CellIndex index) const
{
  if (index >= cell_count()) {
    throw Error(ErrorKind::unknown_cell, "cell index " + std::to_string(index) + " out of range");
  }
  const std::size_t ri = cell_room_[index];
  const Room & room = rooms_[ri];
  const auto local = static_cast<std::int64_t>(index - room.offset);
  return CellRef{ri, local % room.width, local / room.width};
}

std::string Floorplan::label(CellIndex index) const
{
  const CellRef c = cell_at(index);
  return rooms_[c.room].name + "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

std::optional<CellIndex> Floorplan::step(CellIndex c, lang::Direction direction) const
{
  CellRef at = cell_at(c);
  switch (direction) {
    case lang::Direction::north: --at.y; break;
    case lang::Direction::south: ++at.y; break;
    case lang::Direction::east: ++at.x; break;
    case lang::Direction::west: --at.x; break;
  }
  return index_of(at);
}

std::vector<CellIndex> Floorplan::grid_neighbors(CellIndex c) const
{
  std::vector<CellIndex> out;
  if (walls_.at(c)) {
    return out;
  }
  for (auto direction : scan_order) {
    if (auto n = step(c, direction); n && !walls_[*n]) {
      out.push_back(*n);
    }
  }
  return out;
}

std::vector<CellIndex> Floorplan::neighbors(CellIndex c) const
{
  auto out = grid_neighbors(c);
  out.insert(out.end(), links_[c].begin(), links_[c].end());
  return out;
}

std::optional<std::size_t> Floorplan::room_index(std::string_view name) const
{
  for (std::size_t ri = 0; ri < rooms_.size(); ++ri) {
    if (rooms_[ri].name == name) {
      return ri;
    }
  }
  return std::nullopt;
}

DistanceField distance_field(const Floorplan & plan, const std::vector<bool> & blocked)
{
  const std::size_t n = plan.cell_count();
  auto is_blocked = [&](CellIndex c) { return plan.is_wall(c) || (!blocked.empty() && blocked[c]); };

  DistanceField field{std::vector<std::int64_t>(n, DistanceField::unreachable)};
  std::deque<CellIndex> queue;
  for (CellIndex c = 0; c < n; ++c) {
    if (plan.is_exit(c) && !is_blocked(c)) {
      field.hops[c] = 0;
      queue.push_back(c);
    }
  }
  // Jump edges are symmetric (mutual pairing, both ends unlocked), so BFS
  // outward from the exits yields distance-to-exit.
  while (!queue.empty()) {
    const CellIndex c = queue.front();
    queue.pop_front();
    for (CellIndex next : plan.neighbors(c)) {
      if (!is_blocked(next) && field.hops[next] == DistanceField::unreachable) {
        field.hops[next] = field.hops[c] + 1;
        queue.push_back(next);
      }
    }
  }
  return field;
}

}  // namespace bmod::sim
