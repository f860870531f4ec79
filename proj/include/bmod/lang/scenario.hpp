#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bmod/diagnostic.hpp"

namespace bmod::lang
{

enum class Direction { north, south, east, west };

std::string_view to_string(Direction direction) noexcept;
std::optional<Direction> direction_from_string(std::string_view text) noexcept;

/// Declaration order doubles as the canonical kind order used by the
/// serializer when two items share a coordinate.
enum class ItemKind { wall, fire, sign, door, person };

std::string_view to_string(ItemKind kind) noexcept;

struct Coord
{
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Coord &, const Coord &) = default;
};

/// One placed element of a room. Fields beyond kind/at are meaningful only for
/// the kinds that use them; `span` is provenance and excluded from equality.
struct Item
{
  ItemKind kind = ItemKind::wall;
  Coord at;
  std::string name;                   ///< person, door
  std::optional<std::string> target;  ///< door
  bool locked = false;                ///< door
  bool exit = false;                  ///< door
  Direction facing = Direction::north;  ///< sign
  SourceSpan span;

  friend bool operator==(const Item & a, const Item & b)
  {
    return a.kind == b.kind && a.at == b.at && a.name == b.name && a.target == b.target && a.locked == b.locked &&
           a.exit == b.exit && (a.kind != ItemKind::sign || a.facing == b.facing);
  }
};

struct RoomDecl
{
  std::string name;
  std::int64_t width = 1;
  std::int64_t height = 1;
  std::vector<Item> items;
  SourceSpan span;

  friend bool operator==(const RoomDecl & a, const RoomDecl & b)
  {
    return a.name == b.name && a.width == b.width && a.height == b.height && a.items == b.items;
  }
};

struct FloorDecl
{
  std::string name;
  std::vector<RoomDecl> rooms;
  SourceSpan span;

  friend bool operator==(const FloorDecl & a, const FloorDecl & b)
  {
    return a.name == b.name && a.rooms == b.rooms;
  }
};

/// Typed Bmod model: floors of rectangular rooms with placed items.
struct Scenario
{
  std::vector<FloorDecl> floors;

  friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Stable sort of every room's items by (y, x, kind): the canonical order.
void canonicalize(Scenario & scenario);

/// Equality of the canonical forms. This is the structural equality the
/// parse/serialize round trip preserves.
bool structurally_equal(Scenario a, Scenario b);

/// Index-based handle to a room: floor index and room index within it.
struct RoomRef
{
  std::size_t floor = 0;
  std::size_t room = 0;

  friend bool operator==(const RoomRef &, const RoomRef &) = default;
};

/// First room named `name`, searching all floors in order.
std::optional<RoomRef> find_room(const Scenario & scenario, std::string_view name);

}  // namespace bmod::lang
