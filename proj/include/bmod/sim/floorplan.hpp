#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmod/lang/scenario.hpp"

namespace bmod::sim
{

/// Cell address: flat room index (rooms numbered across floors in
/// declaration order) plus grid coordinates.
struct CellRef
{
  std::size_t room = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const CellRef &, const CellRef &) = default;
};

using CellIndex = std::size_t;

/// Static navigation graph of a scenario: one node per grid cell, orthogonal
/// adjacency inside rooms, and jump edges between unlocked paired doors.
///
/// Built from scenarios without error diagnostics; out-of-grid items are
/// ignored rather than rejected.
class Floorplan
{
public:
  struct Room
  {
    std::string name;
    std::size_t floor = 0;
    std::size_t index_in_floor = 0;
    std::int64_t width = 1;
    std::int64_t height = 1;
    CellIndex offset = 0;
  };

  explicit Floorplan(lang::Scenario scenario);

  [[nodiscard]] const lang::Scenario & scenario() const noexcept { return scenario_; }
  [[nodiscard]] const std::vector<Room> & rooms() const noexcept { return rooms_; }
  [[nodiscard]] std::size_t cell_count() const noexcept { return walls_.size(); }

  [[nodiscard]] std::optional<CellIndex> index_of(const CellRef & cell) const noexcept;
  [[nodiscard]] CellRef cell_at(CellIndex index) const;
  [[nodiscard]] std::string label(CellIndex index) const;  ///< `Room(x,y)`

  [[nodiscard]] bool is_wall(CellIndex c) const { return walls_[c]; }
  /// Hosts an unlocked exit door.
  [[nodiscard]] bool is_exit(CellIndex c) const { return exits_[c]; }
  /// Direction of the first sign declared on the cell.
  [[nodiscard]] const std::optional<lang::Direction> & sign(CellIndex c) const { return signs_[c]; }

  /// Orthogonal neighbor in `direction` inside the same room, if on the grid.
  [[nodiscard]] std::optional<CellIndex> step(CellIndex c, lang::Direction direction) const;

  /// North, east, south, west neighbors within the room, skipping walls; empty
  /// for wall cells.
  [[nodiscard]] std::vector<CellIndex> grid_neighbors(CellIndex c) const;

  /// Grid neighbors followed by counterpart cells of unlocked paired doors.
  [[nodiscard]] std::vector<CellIndex> neighbors(CellIndex c) const;

  /// Door-jump targets only.
  [[nodiscard]] const std::vector<CellIndex> & door_links(CellIndex c) const { return links_[c]; }

  /// Flat index of room `name`, if any.
  [[nodiscard]] std::optional<std::size_t> room_index(std::string_view name) const;

private:
  lang::Scenario scenario_;
  std::vector<Room> rooms_;
  std::vector<std::size_t> cell_room_;
  std::vector<bool> walls_;
  std::vector<bool> exits_;
  std::vector<std::optional<lang::Direction>> signs_;
  std::vector<std::vector<CellIndex>> links_;
};

/// Movement order and tie-break order for neighbor scans.
inline constexpr lang::Direction scan_order[] = {lang::Direction::north, lang::Direction::east,
                                                 lang::Direction::south, lang::Direction::west};

/// Per-cell hop count to the nearest reachable exit; `unreachable` otherwise.
struct DistanceField
{
  static constexpr std::int64_t unreachable = -1;
  std::vector<std::int64_t> hops;

  [[nodiscard]] bool reachable(CellIndex c) const { return hops[c] != unreachable; }
  friend bool operator==(const DistanceField &, const DistanceField &) = default;
};

/// Multi-source BFS from every exit cell over `Floorplan::neighbors`, treating
/// cells flagged in `blocked` (burning) as non-navigable. `blocked` may be
/// empty.
DistanceField distance_field(const Floorplan & plan, const std::vector<bool> & blocked);

}  // namespace bmod::sim
