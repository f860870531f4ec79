#pragma once

#include <string_view>

#include "bmod/diagnostic.hpp"
#include "bmod/lang/scenario.hpp"

namespace bmod::validate
{

/// Rule catalogue. Codes are stable.
namespace rule
{
inline constexpr std::string_view dup_name = "VAL_DUP_NAME";
inline constexpr std::string_view out_of_bounds = "VAL_OOB_COORD";
inline constexpr std::string_view on_wall = "VAL_ON_WALL";
inline constexpr std::string_view door_same_room = "VAL_DOOR_SAME_ROOM";
inline constexpr std::string_view door_unpaired = "VAL_DOOR_UNPAIRED";
inline constexpr std::string_view no_exit = "VAL_NO_EXIT";
inline constexpr std::string_view empty = "VAL_EMPTY";
inline constexpr std::string_view overlap_wall_door = "VAL_OVERLAP_WALL_DOOR";
}  // namespace rule

struct RuleInfo
{
  std::string_view code;
  Severity severity;
  std::string_view description;
};

/// Every rule the validator can emit, in catalogue order.
const std::vector<RuleInfo> & catalogue();

/// Static semantic checks. Pure and deterministic; findings are ordered by
/// (floor, room, y, x, code) with scenario-level findings first. A scenario
/// with no error-severity findings can be simulated.
Diagnostics validate(const lang::Scenario & scenario);

}  // namespace bmod::validate
